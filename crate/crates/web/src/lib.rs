//! Browser bindings. Each export wraps a plain function so the logic can be
//! tested natively; build with `wasm-pack build crates/web --target web`.

use serde_json::json;
use tft_core::flipgraph::{self, AntipodeKind};
use tft_core::render::render_svg;
use tft_core::{ColoredTriangulation, PhiVector, RepVector};
use wasm_bindgen::prelude::*;

fn parse_phi(text: &str) -> Result<PhiVector, String> {
    text.trim().parse().map_err(|e| format!("bad phi vector {text:?}: {e}"))
}

/// JSON snapshot of the triangulation with phi vector `phi`: its text form,
/// SVG, representative, length, and distance back to the star.
pub fn describe(phi: &str) -> Result<String, String> {
    let v = parse_phi(phi)?;
    let t = ColoredTriangulation::from_phi(&v);
    let n = v.n();
    let mut out = json!({
        "n": n,
        "phi": v.to_string(),
        "triangulation": t.to_string(),
        "svg": render_svg(&t),
    });
    if n >= 2 {
        let r = RepVector::from_phi(&v).map_err(|e| e.to_string())?;
        out["rep"] = json!(r.to_string());
        out["length"] = json!(r.length());
        out["diameter"] = json!(flipgraph::diameter(n).map_err(|e| e.to_string())?);
    }
    if n >= 3 {
        let base = RepVector::identity(n).map_err(|e| e.to_string())?;
        let r = RepVector::from_phi(&v).map_err(|e| e.to_string())?;
        out["distance_to_star"] = json!(flipgraph::distance_formula(&base, &r).map_err(|e| e.to_string())?);
    }
    Ok(out.to_string())
}

/// Phi vector after flipping the chord of `color`.
pub fn flip_phi(phi: &str, color: usize) -> Result<String, String> {
    let v = parse_phi(phi)?;
    let t = ColoredTriangulation::from_phi(&v).flip(color).map_err(|e| e.to_string())?;
    Ok(t.phi().to_string())
}

/// Phi vector of the color-reversal antipode.
pub fn antipode_phi(phi: &str) -> Result<String, String> {
    let v = parse_phi(phi)?;
    let r = RepVector::from_phi(&v).map_err(|e| e.to_string())?;
    let a = flipgraph::antipode(&r, AntipodeKind::ColorReversal).map_err(|e| e.to_string())?;
    Ok(a.to_phi().to_string())
}

/// Flip distance between two phi vectors of the same `n ≥ 3`.
pub fn distance_phi(from: &str, to: &str) -> Result<usize, String> {
    let (a, b) = (parse_phi(from)?, parse_phi(to)?);
    if a.n() != b.n() {
        return Err(format!("n differs: {} vs {}", a.n(), b.n()));
    }
    let r = RepVector::from_phi(&a).map_err(|e| e.to_string())?;
    let s = RepVector::from_phi(&b).map_err(|e| e.to_string())?;
    flipgraph::distance_formula(&r, &s).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn describe_js(phi: &str) -> Result<String, JsError> {
    describe(phi).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn flip_js(phi: &str, color: usize) -> Result<String, JsError> {
    flip_phi(phi, color).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn antipode_js(phi: &str) -> Result<String, JsError> {
    antipode_phi(phi).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn distance_js(from: &str, to: &str) -> Result<usize, JsError> {
    distance_phi(from, to).map_err(|e| JsError::new(&e))
}
