//! The colored flip graph `Γₙ` as the Schreier graph of `Stₙ` on `Rₙ`.
//!
//! Vertices are indexed by [`RepVector::index`] (lexicographic exponents).
//! For each vertex and generator the normalized target is stored; a target
//! equal to the vertex itself is a loop and never counts as an edge.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coxeter::Word;
use crate::error::{invalid, Error, Result};
use crate::representatives::{all_reps, RepVector};
use crate::{ctft_count, polygon_size};

/// Largest `n` accepted by [`FlipGraph::build`]. At `n = 20` the target
/// table alone takes about 2 GiB.
pub const MAX_GRAPH_N: usize = 20;
/// Largest `n` accepted by [`FlipGraph::all_pairs`].
pub const MAX_ALL_PAIRS_N: usize = 8;
/// Largest `n` accepted by [`diameter_formula_scan`].
pub const MAX_SCAN_N: usize = 14;

pub struct FlipGraph {
    n: usize,
    /// `targets[v·(n+1) + i]` is the vertex reached from `v` by `sᵢ`.
    targets: Vec<u32>,
}

impl FlipGraph {
    /// For every vertex `r` and generator `i`, records `sᵢ·r` normalized into
    /// `Rₙ`. For `n ≤ 5` the result is checked against the Hasse-diagram
    /// description.
    pub fn build(n: usize) -> Result<Self> {
        if !(2..=MAX_GRAPH_N).contains(&n) {
            return Err(invalid(format!("graph needs 2 <= n <= {MAX_GRAPH_N}, got {n}")));
        }
        let mut targets = Vec::with_capacity(ctft_count(n) * (n + 1));
        for r in all_reps(n)? {
            for i in 0..=n {
                targets.push(r.apply_generator_unchecked(i).rep.index() as u32);
            }
        }
        let g = Self { n, targets };
        if n <= 5 && !g.matches_hasse_description() {
            return Err(Error::Unsupported(format!(
                "Schreier edges of n = {n} differ from Hasse covers plus wrap edges"
            )));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.targets.len() / (self.n + 1)
    }

    pub fn vertex(&self, index: usize) -> RepVector {
        RepVector::from_index_unchecked(self.n, index)
    }

    pub fn vertices(&self) -> impl Iterator<Item = RepVector> + '_ {
        (0..self.vertex_count()).map(|k| self.vertex(k))
    }

    /// Target of generator `i` from vertex `v`.
    pub fn target(&self, v: usize, i: usize) -> usize {
        self.targets[v * (self.n + 1) + i] as usize
    }

    /// Generators acting as loops at `v`.
    pub fn loops(&self, v: usize) -> Vec<usize> {
        (0..=self.n).filter(|&i| self.target(v, i) == v).collect()
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..=self.n)
            .map(|i| self.target(v, i))
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every colored edge once, as `(u, v, color)` with `u < v`, sorted.
    pub fn colored_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for i in 0..=self.n {
                let u = self.target(v, i);
                if v < u {
                    out.push((v, u, i));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Undirected simple edges `(u, v)` with `u < v`.
    pub fn simple_edges(&self) -> BTreeSet<(usize, usize)> {
        self.colored_edges().into_iter().map(|(u, v, _)| (u, v)).collect()
    }

    /// Hasse covers of the dominance order together with the wrap edges
    /// `(v, v·aₙ₋₁aₙ^{n+3})` for `v = a₀^{ε₀}⋯aₙ₋₂^{εₙ₋₂}`, computed from the
    /// order alone.
    pub fn hasse_description(n: usize) -> Result<BTreeSet<(usize, usize)>> {
        let reps: Vec<RepVector> = all_reps(n)?.collect();
        let mut edges = BTreeSet::new();
        for r in &reps {
            for s in &reps {
                if s.length() == r.length() + 1 && r.le(s) {
                    let (a, b) = (r.index(), s.index());
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        for low in 0..1u64 << (n - 1) {
            let v = RepVector::from_parts(n, low, 0)?;
            let w = RepVector::from_parts(n, low | 1 << (n - 1), n + 3)?;
            let (a, b) = (v.index(), w.index());
            edges.insert((a.min(b), a.max(b)));
        }
        Ok(edges)
    }

    pub fn matches_hasse_description(&self) -> bool {
        Self::hasse_description(self.n)
            .map(|h| h == self.simple_edges())
            .unwrap_or(false)
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(v) = queue.pop_front() {
            let d = dist[v] + 1;
            for i in 0..=self.n {
                let u = self.target(v, i);
                if dist[u] == u32::MAX {
                    dist[u] = d;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn bfs_distance(&self, r: &RepVector, s: &RepVector) -> Result<usize> {
        self.check_vertex(r)?;
        self.check_vertex(s)?;
        let d = self.bfs(r.index())[s.index()];
        if d == u32::MAX {
            return Err(Error::Unsupported(format!("{s} unreachable from {r}")));
        }
        Ok(d as usize)
    }

    fn check_vertex(&self, r: &RepVector) -> Result<()> {
        if r.n() != self.n {
            return Err(invalid(format!("vertex {r} does not belong to n = {}", self.n)));
        }
        Ok(())
    }

    /// Row `u` holds BFS distances from vertex `u`.
    pub fn all_pairs(&self) -> Result<Vec<Vec<u32>>> {
        if self.n > MAX_ALL_PAIRS_N {
            return Err(invalid(format!("all-pairs BFS limited to n <= {MAX_ALL_PAIRS_N}")));
        }
        Ok((0..self.vertex_count()).map(|v| self.bfs(v)).collect())
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// Largest BFS eccentricity. By rotation invariance it suffices to start
    /// from the vertices with `εₙ = 0`.
    pub fn diameter_bfs(&self) -> u32 {
        let size = polygon_size(self.n);
        (0..self.vertex_count())
            .step_by(size)
            .map(|v| *self.bfs(v).iter().max().expect("graph is non-empty"))
            .max()
            .unwrap_or(0)
    }

    /// Two-coloring by BFS layers; `None` if some edge joins equal layers
    /// modulo 2.
    pub fn bfs_two_coloring(&self) -> Option<Vec<u8>> {
        let dist = self.bfs(0);
        let colors: Vec<u8> = dist.iter().map(|d| (d % 2) as u8).collect();
        self.simple_edges()
            .iter()
            .all(|&(u, v)| colors[u] != colors[v])
            .then_some(colors)
    }
}

fn check_formula_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "the closed-form distance is stated for n >= 3, got n = {n}"
        )));
    }
    Ok(())
}

/// Closed-form distance from differences `dᵢ = εᵢ - δᵢ` (`i < n`) and
/// `Δ = εₙ - δₙ mod n+4`:
/// `min(Σⱼ |Δ + Σ_{i≥j} dᵢ|, Σⱼ |n+4 - Δ - Σ_{i≥j} dᵢ|)`, with `j` over `0..=n`.
pub fn distance_from_differences(n: usize, d: &[i64], delta: i64) -> i64 {
    let size = polygon_size(n) as i64;
    let (mut up, mut down) = (delta.abs(), (size - delta).abs());
    let mut tail = 0;
    for j in (0..n).rev() {
        tail += d[j];
        up += (delta + tail).abs();
        down += (size - delta - tail).abs();
    }
    up.min(down)
}

/// Flip distance between `r·T₀` and `s·T₀` in closed form. Both vertices are
/// first rotated by `aₙ^{-δₙ}`.
pub fn distance_formula(r: &RepVector, s: &RepVector) -> Result<usize> {
    if r.n() != s.n() {
        return Err(invalid("representatives of different n"));
    }
    let n = r.n();
    check_formula_n(n)?;
    let size = polygon_size(n) as i64;
    let delta = (r.top() as i64 - s.top() as i64).rem_euclid(size);
    let d: Vec<i64> = (0..n).map(|i| r.eps(i) as i64 - s.eps(i) as i64).collect();
    Ok(distance_from_differences(n, &d, delta) as usize)
}

/// `(n+1)(n+4)/2`.
pub fn diameter(n: usize) -> Result<usize> {
    check_formula_n(n)?;
    Ok((n + 1) * (n + 4) / 2)
}

/// Maximum of [`distance_formula`] over all pairs. The formula depends on a
/// pair only through `(d, Δ)` with `d ∈ {-1,0,1}ⁿ`, and every such pair of
/// arguments is realized, so the scan runs over `3ⁿ·(n+4)` cases.
pub fn diameter_formula_scan(n: usize) -> Result<usize> {
    check_formula_n(n)?;
    if n > MAX_SCAN_N {
        return Err(invalid(format!("formula scan limited to n <= {MAX_SCAN_N}")));
    }
    let size = polygon_size(n) as i64;
    let mut d = vec![-1i64; n];
    let mut best = 0;
    loop {
        for delta in 0..size {
            best = best.max(distance_from_differences(n, &d, delta));
        }
        let Some(k) = d.iter().position(|&x| x < 1) else {
            break;
        };
        d[k] += 1;
        d[..k].iter_mut().for_each(|x| *x = -1);
    }
    Ok(best as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntipodeKind {
    /// Reverse the coloring of the triangulation, `i ↦ n-i`.
    ColorReversal,
    /// Rotate the polygon by `π`; even `n` only.
    Rotation,
}

/// The antipodal vertex of `r` under color reversal or half-turn rotation.
pub fn antipode(r: &RepVector, kind: AntipodeKind) -> Result<RepVector> {
    let n = r.n();
    let size = polygon_size(n);
    match kind {
        AntipodeKind::ColorReversal => {
            let eps: Vec<usize> = (0..n)
                .map(|i| 1 - r.eps(n - 1 - i))
                .chain(std::iter::once((2 + r.exponents().iter().sum::<usize>()) % size))
                .collect();
            RepVector::new(n, &eps)
        }
        AntipodeKind::Rotation => {
            if !n.is_multiple_of(2) {
                return Err(invalid(format!("rotation antipode needs even n, got {n}")));
            }
            Ok(r.rotate(size as i64 / 2))
        }
    }
}

/// `(-1)^ℓ(r)`.
pub fn sign(r: &RepVector) -> i8 {
    if r.length().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionReport {
    pub bad_edges: Vec<(usize, usize)>,
    pub even: usize,
    pub odd: usize,
}

impl BipartitionReport {
    pub fn is_ok(&self) -> bool {
        self.bad_edges.is_empty() && self.even == self.odd
    }
}

pub fn bipartition_check(g: &FlipGraph) -> BipartitionReport {
    let bad_edges = g
        .simple_edges()
        .into_iter()
        .filter(|&(u, v)| sign(&g.vertex(u)) == sign(&g.vertex(v)))
        .collect();
    let even = g.vertices().filter(|r| sign(r) == 1).count();
    BipartitionReport {
        bad_edges,
        even,
        odd: g.vertex_count() - even,
    }
}

/// For each coset, a word for its shortest element: `r` itself when
/// `ℓ(r) ≤ (n+1)(n+4)/2`, otherwise `r·gₙ⁻¹`.
pub fn shortest_representatives(n: usize) -> Result<Vec<(RepVector, Word)>> {
    let bound = diameter(n)?;
    let gn_inv = Word::gn(n)?.inverse();
    all_reps(n)?
        .map(|r| {
            let w = r.to_word();
            Ok(if r.length() <= bound { (r, w) } else { (r, &w * &gn_inv) })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVertex {
    pub rep: String,
    pub phi: String,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub u: String,
    pub v: String,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub format: u32,
    pub n: usize,
    pub vertices: Vec<JsonVertex>,
    pub edges: Vec<JsonEdge>,
}

pub const JSON_FORMAT_VERSION: u32 = 1;

impl FlipGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph flip_graph_n{} {{", self.n).unwrap();
        for r in self.vertices() {
            writeln!(out, "  v{} [label=\"{r}\"];", r.index()).unwrap();
        }
        for (u, v, i) in self.colored_edges() {
            writeln!(out, "  v{u} -- v{v} [label=\"color={i}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_graph(&self) -> JsonGraph {
        let vertices = self
            .vertices()
            .map(|r| JsonVertex {
                rep: r.to_string(),
                phi: r.to_phi().to_string(),
                length: r.length(),
            })
            .collect();
        let edges = self
            .colored_edges()
            .into_iter()
            .map(|(u, v, color)| JsonEdge {
                u: self.vertex(u).to_string(),
                v: self.vertex(v).to_string(),
                color,
            })
            .collect();
        JsonGraph {
            format: JSON_FORMAT_VERSION,
            n: self.n,
            vertices,
            edges,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_graph())?)
    }

    /// Rebuilds a graph from its JSON export. Generators without an edge
    /// become loops.
    pub fn from_json(text: &str) -> Result<Self> {
        let j: JsonGraph = serde_json::from_str(text)?;
        if j.format != JSON_FORMAT_VERSION {
            return Err(Error::Parse(format!("unknown format version {}", j.format)));
        }
        let n = j.n;
        if !(2..=MAX_GRAPH_N).contains(&n) {
            return Err(invalid(format!("n = {n} out of range")));
        }
        let count = ctft_count(n);
        if j.vertices.len() != count {
            return Err(Error::Parse(format!("expected {count} vertices, got {}", j.vertices.len())));
        }
        let mut targets: Vec<u32> = (0..count)
            .flat_map(|v| std::iter::repeat_n(v as u32, n + 1))
            .collect();
        let parse = |s: &str| -> Result<usize> {
            let r: RepVector = s.parse()?;
            if r.n() != n {
                return Err(Error::Parse(format!("vertex {s} does not have n = {n}")));
            }
            Ok(r.index())
        };
        for e in &j.edges {
            if e.color > n {
                return Err(Error::Parse(format!("color {} out of range", e.color)));
            }
            let (u, v) = (parse(&e.u)?, parse(&e.v)?);
            targets[u * (n + 1) + e.color] = v as u32;
            targets[v * (n + 1) + e.color] = u as u32;
        }
        Ok(Self { n, targets })
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Dot => Ok(self.to_dot()),
            ExportFormat::Json => self.to_json(),
        }
    }

    pub fn write_export(&self, format: ExportFormat, path: &Path) -> Result<()> {
        let text = self.export(format)?;
        std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

impl PartialEq for FlipGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.targets == other.targets
    }
}

impl std::fmt::Debug for FlipGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlipGraph")
            .field("n", &self.n)
            .field("vertices", &self.vertex_count())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> RepVector {
        s.parse().unwrap()
    }

    #[test]
    fn n3_basics() {
        let g = FlipGraph::build(3).unwrap();
        assert_eq!(g.vertex_count(), 56);
        assert!(g.is_connected());
        for v in 0..g.vertex_count() {
            assert!(g.neighbors(v).len() <= 4);
            let r = g.vertex(v);
            let expect: Vec<usize> = (1..3).filter(|&i| r.eps(i - 1) == r.eps(i)).collect();
            assert_eq!(g.loops(v), expect);
        }
    }

    #[test]
    fn wrap_edges_n3() {
        let g = FlipGraph::build(3).unwrap();
        for low in 0..4u64 {
            let v = RepVector::from_parts(3, low, 0).unwrap();
            let w = RepVector::from_parts(3, low | 4, 6).unwrap();
            assert_eq!(g.target(v.index(), 3), w.index());
        }
    }

    #[test]
    fn distances_n3() {
        let g = FlipGraph::build(3).unwrap();
        let id = RepVector::identity(3).unwrap();
        let wo = RepVector::longest(3).unwrap();
        assert_eq!(g.bfs_distance(&id, &id).unwrap(), 0);
        assert_eq!(g.bfs_distance(&id, &rep("1,0,0,0")).unwrap(), 1);
        assert_eq!(g.bfs_distance(&id, &wo).unwrap(), 4);
        assert_eq!(distance_formula(&id, &wo).unwrap(), 4);
        assert_eq!(distance_formula(&id, &rep("1,1,1,2")).unwrap(), 14);
        assert_eq!(distance_formula(&wo, &wo).unwrap(), 0);
        assert!(distance_formula(&rep("0,0,0"), &rep("0,0,0")).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(3).unwrap(), 14);
        assert_eq!(diameter(4).unwrap(), 20);
        assert_eq!(diameter(6).unwrap(), 35);
        assert!(diameter(2).is_err());
        assert_eq!(FlipGraph::build(3).unwrap().diameter_bfs(), 14);
        assert_eq!(diameter_formula_scan(3).unwrap(), 14);
        assert_eq!(diameter_formula_scan(7).unwrap(), diameter(7).unwrap());
    }

    #[test]
    fn antipode_examples() {
        let id3 = RepVector::identity(3).unwrap();
        assert_eq!(antipode(&id3, AntipodeKind::ColorReversal).unwrap(), rep("1,1,1,2"));
        let id4 = RepVector::identity(4).unwrap();
        assert_eq!(antipode(&id4, AntipodeKind::Rotation).unwrap(), rep("0,0,0,0,4"));
        assert!(antipode(&id3, AntipodeKind::Rotation).is_err());
        for r in all_reps(3).unwrap() {
            let a = antipode(&r, AntipodeKind::ColorReversal).unwrap();
            assert_eq!(antipode(&a, AntipodeKind::ColorReversal).unwrap(), r);
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&RepVector::identity(3).unwrap()), 1);
        let g = FlipGraph::build(3).unwrap();
        let b = bipartition_check(&g);
        assert!(b.is_ok());
        assert_eq!((b.even, b.odd), (28, 28));
        assert_eq!(rep("0,0,1,6").length(), 27);
        assert!(g.bfs_two_coloring().is_some());
    }

    #[test]
    fn shortest_reps_n3() {
        let list = shortest_representatives(3).unwrap();
        let map: std::collections::HashMap<_, _> = list.into_iter().collect();
        assert!(map[&RepVector::identity(3).unwrap()].is_empty());
        let w = &map[&RepVector::longest(3).unwrap()];
        assert_eq!(crate::coxeter::coxeter_length(&w.to_affine()), 4);
        let w = &map[&rep("1,0,1,2")];
        assert_eq!(w, &rep("1,0,1,2").to_word());
    }

    #[test]
    fn exports() {
        let g = FlipGraph::build(3).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.lines().filter(|l| l.contains("[label=\"") && !l.contains("--")).count(), 56);
        assert!(dot.contains("v0 [label=\"0,0,0,0\"];"));
        let j = g.to_json_graph();
        assert_eq!(j.vertices[0], JsonVertex { rep: "0,0,0,0".into(), phi: "0:000".into(), length: 0 });
        let back = FlipGraph::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(FlipGraph::from_json(r#"{"format":2,"n":3,"vertices":[],"edges":[]}"#).is_err());
    }

    #[test]
    fn build_range() {
        assert!(FlipGraph::build(1).is_err());
        assert!(FlipGraph::build(MAX_GRAPH_N + 1).is_err());
        assert!(FlipGraph::build(2).unwrap().is_connected());
    }
}
