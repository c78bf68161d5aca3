//! Invariant suites behind `tft verify`. Each check passes, fails, is skipped
//! because `n` exceeds its cap, or records a finding (a tested fact that is
//! reported rather than required).

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::coxeter::{self, act_generator, act_on_phi, coxeter_length, Word};
use crate::error::Result;
use crate::flipgraph::{self, AntipodeKind, FlipGraph};
use crate::geometry::{self, ColoredTriangulation, PhiVector, Symmetry};
use crate::representatives::{all_reps, length_distribution, rank_polynomial, RepVector};
use crate::{ctft_count, polygon_size};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Geometry,
    Coxeter,
    Lattice,
    Graph,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Geometry, Suite::Coxeter, Suite::Lattice, Suite::Graph];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Coxeter => "coxeter",
            Suite::Lattice => "lattice",
            Suite::Graph => "graph",
        }
    }
}

/// Per-check `n` limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub geometry: usize,
    pub relations: usize,
    pub length: usize,
    pub lattice_pairs: usize,
    pub description: usize,
    pub all_pairs: usize,
    pub formula_scan: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            geometry: 8,
            relations: 6,
            length: 5,
            lattice_pairs: 4,
            description: 5,
            all_pairs: 6,
            formula_scan: 12,
        }
    }
}

impl Caps {
    /// Every cap set to `max_n`.
    pub fn uniform(max_n: usize) -> Self {
        Self {
            geometry: max_n,
            relations: max_n,
            length: max_n,
            lattice_pairs: max_n,
            description: max_n,
            all_pairs: max_n.min(flipgraph::MAX_ALL_PAIRS_N),
            formula_scan: max_n.min(flipgraph::MAX_SCAN_N),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Finding(String),
    Skip(String),
}

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub n: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| matches!(c.status, Status::Fail(_)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let (tag, detail) = match &c.status {
                Status::Pass => ("PASS", ""),
                Status::Fail(d) => ("FAIL", d.as_str()),
                Status::Finding(d) => ("NOTE", d.as_str()),
                Status::Skip(d) => ("SKIP", d.as_str()),
            };
            write!(f, "{tag:<5} {:<9} {}", c.suite.name(), c.name)?;
            if !detail.is_empty() {
                write!(f, ": {detail}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Runner {
    n: usize,
    suite: Suite,
    checks: Vec<Check>,
}

type Outcome = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

impl Runner {
    fn push(&mut self, name: &str, status: Status) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            status,
        });
    }

    /// Runs `f` when `min_n ≤ n ≤ cap`, otherwise records a skip.
    fn check(&mut self, name: &str, min_n: usize, cap: usize, f: impl FnOnce() -> Outcome) {
        let status = if self.n < min_n {
            Status::Skip(format!("needs n >= {min_n}"))
        } else if self.n > cap {
            Status::Skip(format!("n > cap {cap}"))
        } else {
            match f() {
                Ok(()) => Status::Pass,
                Err(e) => Status::Fail(e),
            }
        };
        self.push(name, status);
    }

    fn finding(&mut self, name: &str, min_n: usize, cap: usize, f: impl FnOnce() -> String) {
        let status = if self.n < min_n || self.n > cap {
            Status::Skip(format!("runs for {min_n} <= n <= {cap}"))
        } else {
            Status::Finding(f())
        };
        self.push(name, status);
    }
}

/// Runs the requested suites for one value of `n`.
pub fn run(n: usize, suites: &[Suite], caps: &Caps) -> Report {
    let mut report = Report {
        n,
        checks: Vec::new(),
    };
    for &suite in suites {
        let mut r = Runner {
            n,
            suite,
            checks: Vec::new(),
        };
        match suite {
            Suite::Geometry => geometry_suite(&mut r, caps),
            Suite::Coxeter => coxeter_suite(&mut r, caps),
            Suite::Lattice => lattice_suite(&mut r, caps),
            Suite::Graph => graph_suite(&mut r, caps),
        }
        report.checks.extend(r.checks);
    }
    report
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn geometry_suite(r: &mut Runner, caps: &Caps) {
    let n = r.n;
    let cap = caps.geometry;
    let all = if (1..=cap).contains(&n) {
        geometry::enumerate_ctft(n).unwrap_or_default()
    } else {
        Vec::new()
    };
    r.check("count (n+4)*2^n", 1, cap, || {
        ensure(all.len() == ctft_count(n), || format!("got {}", all.len()))
    });
    r.check("two colorings per triangulation", 1, cap, || {
        let mut by_shape: HashMap<_, usize> = HashMap::new();
        for t in &all {
            *by_shape.entry(t.uncolored()).or_default() += 1;
        }
        ensure(
            by_shape.values().all(|&c| c == 2) && 2 * by_shape.len() == all.len(),
            || format!("{} shapes for {} colorings", by_shape.len(), all.len()),
        )
    });
    r.check("short chords are exactly colors 0 and n", 1, cap, || {
        match all.iter().find(|t| t.short_chords() != [0, n]) {
            Some(t) => Err(format!("{t}")),
            None => Ok(()),
        }
    });
    r.check("every enumerated triangulation validates", 1, cap, || {
        match all.iter().find(|t| !t.validate().is_ok()) {
            Some(t) => Err(format!("{t}: {}", t.validate())),
            None => Ok(()),
        }
    });
    r.check("phi is a bijection", 1, cap, || {
        let images: HashSet<PhiVector> = all.iter().map(|t| t.phi()).collect();
        ensure(images.len() == all.len(), || "phi not injective".into())?;
        for v in geometry::all_phi_vectors(n) {
            let t = ColoredTriangulation::from_phi(&v);
            ensure(t.phi() == v, || format!("phi(phi_inv({v})) = {}", t.phi()))?;
        }
        Ok(())
    });
    r.check("flip involution and fixed points", 1, cap, || {
        for t in &all {
            let v = t.phi();
            for i in 0..=n {
                let f = t.flip(i).map_err(err)?;
                ensure(f.flip(i).map_err(err)? == *t, || format!("flip {i} not involutive at {v}"))?;
                let expect_fixed = 0 < i && i < n && v.bit(i) == v.bit(i + 1);
                ensure((f == *t) == expect_fixed, || format!("flip {i} at {v}: fixed = {}", f == *t))?;
            }
        }
        Ok(())
    });
    r.check("rotation commutes with flips", 1, cap, || {
        for t in &all {
            ensure(t.symmetry(Symmetry::Rotate(polygon_size(n) as i64)) == *t, || "full turn".into())?;
            for i in 0..=n {
                let a = t.flip(i).map_err(err)?.symmetry(Symmetry::Rotate(1));
                let b = t.symmetry(Symmetry::Rotate(1)).flip(i).map_err(err)?;
                ensure(a == b, || format!("color {i} at {t}"))?;
            }
        }
        Ok(())
    });
    r.check("color reversal is a valid involution", 1, cap, || {
        for t in &all {
            let rev = t.symmetry(Symmetry::ReverseColors);
            ensure(rev.validate().is_ok(), || format!("reverse of {t} invalid"))?;
            ensure(rev.symmetry(Symmetry::ReverseColors) == *t, || format!("{t}"))?;
        }
        Ok(())
    });
}

fn coxeter_suite(r: &mut Runner, caps: &Caps) {
    let n = r.n;
    let any = usize::MAX;
    r.check("relations as affine maps", 2, any, || {
        for rel in coxeter::verify_relations(n, 0).map_err(err)? {
            ensure(rel.as_map, || rel.label.clone())?;
        }
        Ok(())
    });
    r.check("relations on every vector", 2, caps.relations, || {
        for rel in coxeter::verify_relations(n, n).map_err(err)? {
            ensure(rel.on_vectors == Some(true), || rel.label.clone())?;
        }
        Ok(())
    });
    r.check("vector action = flip conjugated by phi", 2, caps.relations, || {
        for v in geometry::all_phi_vectors(n) {
            let t = ColoredTriangulation::from_phi(&v);
            for i in 0..=n {
                let geo = t.flip(i).map_err(err)?.phi();
                ensure(geo == act_generator(i, v), || format!("s_{i} on {v}"))?;
            }
        }
        Ok(())
    });
    r.check("g_0 and s_n..s_0 affine forms", 2, any, || {
        let x: Vec<i64> = (1..=n as i64).map(|k| 7 * k + 1).collect();
        let mut g0 = x.clone();
        g0[0] = x[n - 1] - 2;
        g0[n - 1] = x[0] + 2;
        ensure(Word::g0(n).map_err(err)?.to_affine().apply(&x) == g0, || "g_0".into())?;
        let mut c = x[1..].to_vec();
        c.push(x[0] + 2);
        ensure(Word::a(n, n).map_err(err)?.to_affine().apply(&x) == c, || "s_n..s_0".into())
    });
    r.check("stabilizer generators fix T_0, orbit is everything", 2, caps.geometry, || {
        let rep = coxeter::verify_stabilizer(n).map_err(err)?;
        ensure(rep.is_ok(), || format!("{rep:?}"))
    });
    r.check("Gram determinants and volume ratio", 2, 30, || {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let g = coxeter::gram_and_volumes(n).map_err(err)?;
        let det_b = BigRational::new(BigInt::from(4).pow(n as u32 - 1), BigInt::from(n));
        ensure(g.det_a == BigRational::from_integer(1.into()), || format!("det A = {}", g.det_a))?;
        ensure(g.det_b == det_b, || format!("det B = {}", g.det_b))?;
        let ratio = BigRational::from_integer(BigInt::from(ctft_count(n)));
        ensure(g.ratio == ratio, || format!("ratio = {}", g.ratio))
    });
    r.finding("s_0 center direction", 2, any, || {
        let z = PhiVector::zero(n);
        let size = polygon_size(n);
        let down = act_generator(0, z).a();
        let one: PhiVector = act_generator(0, z);
        let up = act_generator(0, one).a();
        let sign = |a: usize, from: usize| if a == (from + 1) % size { "+1" } else { "-1" };
        format!(
            "with counterclockwise labels s_0 moves a by {} when b_1=0 and by {} when b_1=1; \
             the convention 'a+1 when b_1=0' holds only for clockwise labels",
            sign(down, 0),
            sign(up, down)
        )
    });
}

/// `Sₖ`-dominance closure of the cover relation, as a dense boolean matrix.
fn cover_closure(n: usize) -> Result<Vec<Vec<bool>>> {
    let reps: Vec<RepVector> = all_reps(n)?.collect();
    let count = reps.len();
    let mut le = vec![vec![false; count]; count];
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(reps[k].length()));
    for &k in &order {
        le[k][k] = true;
        for up in reps[k].covers() {
            let u = up.index();
            let row = le[u].clone();
            for (x, &b) in row.iter().enumerate() {
                if b {
                    le[k][x] = true;
                }
            }
        }
    }
    Ok(le)
}

fn lattice_suite(r: &mut Runner, caps: &Caps) {
    let n = r.n;
    let reps: Vec<RepVector> = if n >= 2 {
        all_reps(n).map(|it| it.collect()).unwrap_or_default()
    } else {
        Vec::new()
    };
    r.check("rep_length = hyperplane-count length", 2, caps.length, || {
        for x in &reps {
            let oracle = coxeter_length(&x.to_word().to_affine()) as usize;
            ensure(oracle == x.length(), || format!("{x}: {oracle} vs {}", x.length()))?;
        }
        Ok(())
    });
    r.check("rep_to_phi closed form = word action", 2, caps.relations, || {
        for x in &reps {
            let by_word = act_on_phi(&x.to_word(), PhiVector::zero(n)).map_err(err)?;
            ensure(by_word == x.to_phi(), || format!("{x}: {by_word} vs {}", x.to_phi()))?;
            ensure(RepVector::from_phi(&by_word).map_err(err)? == *x, || format!("{x}"))?;
        }
        Ok(())
    });
    r.check("apply_generator tracks the vector action", 2, caps.geometry, || {
        for x in &reps {
            for i in 0..=n {
                let g = x.apply_generator(i).map_err(err)?;
                let v = act_generator(i, x.to_phi());
                ensure(g.rep.to_phi() == v, || format!("s_{i} on {x}"))?;
                ensure(g.moved == (v != x.to_phi()), || format!("moved flag s_{i} on {x}"))?;
            }
        }
        Ok(())
    });
    r.check("left descents agree with lengths", 2, caps.geometry, || {
        for x in &reps {
            for i in 0..=n {
                let g = x.apply_generator(i).map_err(err)?;
                let wrap = i == n && g.rep.top().abs_diff(x.top()) > 1;
                if g.moved && !wrap {
                    let shorter = g.rep.length() < x.length();
                    ensure(shorter == x.is_left_descent(i), || format!("s_{i} on {x}"))?;
                }
            }
        }
        Ok(())
    });
    r.check("dominance = transitive closure of covers", 2, caps.lattice_pairs, || {
        let le = cover_closure(n).map_err(err)?;
        for x in &reps {
            for y in &reps {
                ensure(x.le(y) == le[x.index()][y.index()], || format!("{x} vs {y}"))?;
            }
        }
        Ok(())
    });
    r.check("meet/join are glb/lub and modular", 2, caps.lattice_pairs, || {
        for x in &reps {
            for y in &reps {
                let (m, j) = (x.meet(y), x.join(y));
                ensure(m.le(x) && m.le(y) && x.le(&j) && y.le(&j), || format!("bounds {x},{y}"))?;
                let glb = reps.iter().all(|z| !(z.le(x) && z.le(y)) || z.le(&m));
                let lub = reps.iter().all(|z| !(x.le(z) && y.le(z)) || j.le(z));
                ensure(glb && lub, || format!("extremality {x},{y}"))?;
                ensure(m.length() + j.length() == x.length() + y.length(), || format!("modularity {x},{y}"))?;
            }
        }
        Ok(())
    });
    r.check("dual reverses order and complements length", 2, caps.lattice_pairs, || {
        let top = RepVector::longest(n).map_err(err)?.length();
        for x in &reps {
            ensure(x.dual().dual() == *x, || format!("{x}"))?;
            ensure(x.length() + x.dual().length() == top, || format!("{x}"))?;
            for y in &reps {
                ensure(x.le(y) == y.dual().le(&x.dual()), || format!("{x} vs {y}"))?;
            }
        }
        Ok(())
    });
    r.check("rank polynomial = length distribution", 2, caps.geometry, || {
        let p = rank_polynomial(n).map_err(err)?;
        let d = length_distribution(n).map_err(err)?;
        ensure(p == d, || "coefficients differ".into())?;
        ensure(p.len() - 1 == 3 * (n + 2) * (n + 1) / 2, || format!("degree {}", p.len() - 1))?;
        ensure(p.iter().rev().eq(p.iter()), || "not palindromic".into())
    });
    r.check("r*w_o = dual(r) as affine maps", 2, caps.length, || {
        let wo = RepVector::longest(n).map_err(err)?.to_word().to_affine();
        for x in &reps {
            let lhs = x.to_word().to_affine().compose(&wo);
            ensure(lhs == x.dual().to_word().to_affine(), || format!("{x}"))?;
        }
        Ok(())
    });
    r.finding("alternate closed form v_0=-eps_n, v_i=eps_(n-i)", 2, caps.geometry, || {
        let size = polygon_size(n);
        let hits = reps
            .iter()
            .filter(|x| {
                let bits: Vec<u8> = (1..=n).map(|i| x.eps(n - i) as u8).collect();
                let alt = PhiVector::new(n, (size - x.top()) % size, &bits);
                alt.ok() == Some(x.to_phi())
            })
            .count();
        format!(
            "matches the word action for {hits}/{} reps; the word action gives a = -sum(eps), b_i = eps_(i-1)",
            reps.len()
        )
    });
}

fn graph_suite(r: &mut Runner, caps: &Caps) {
    let n = r.n;
    let cap_g = caps.geometry.max(caps.all_pairs).min(flipgraph::MAX_GRAPH_N);
    let graph = if (2..=cap_g).contains(&n) {
        FlipGraph::build(n).ok()
    } else {
        None
    };
    let g = || graph.as_ref().ok_or_else(|| "graph unavailable".to_string());
    r.check("Schreier edges = Hasse covers + wrap edges", 2, caps.description.min(cap_g), || {
        ensure(g()?.matches_hasse_description(), || "edge sets differ".into())
    });
    r.check("edges match colored flips", 2, caps.geometry.min(cap_g), || {
        let g = g()?;
        for (u, v, i) in g.colored_edges() {
            let t = ColoredTriangulation::from_phi(&g.vertex(u).to_phi());
            let f = t.flip(i).map_err(err)?;
            ensure(f.phi() == g.vertex(v).to_phi(), || format!("edge {u}-{v} color {i}"))?;
        }
        Ok(())
    });
    r.check("connected", 2, cap_g, || ensure(g()?.is_connected(), || "disconnected".into()));
    r.check("rotation by a_n is an automorphism", 2, cap_g, || {
        let g = g()?;
        let rotated: std::collections::BTreeSet<_> = g
            .simple_edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (g.vertex(u).rotate(1).index(), g.vertex(v).rotate(1).index());
                (a.min(b), a.max(b))
            })
            .collect();
        ensure(rotated == g.simple_edges(), || "edge set moved".into())
    });
    let cap_d = caps.all_pairs;
    let dist = if n >= 3 && n <= cap_d {
        graph.as_ref().and_then(|g| g.all_pairs().ok())
    } else {
        None
    };
    let d = || dist.as_ref().ok_or_else(|| "distances unavailable".to_string());
    r.check("distance formula = BFS (all pairs)", 3, cap_d, || {
        let (g, d) = (g()?, d()?);
        for x in g.vertices() {
            for y in g.vertices() {
                let f = flipgraph::distance_formula(&x, &y).map_err(err)?;
                ensure(f == d[x.index()][y.index()] as usize, || format!("{x} -> {y}: {f}"))?;
            }
        }
        Ok(())
    });
    r.check("BFS diameter = (n+1)(n+4)/2", 3, cap_d, || {
        let d = d()?;
        let max = d.iter().flatten().max().copied().unwrap_or(0) as usize;
        let expect = flipgraph::diameter(n).map_err(err)?;
        ensure(max == expect, || format!("{max} vs {expect}"))
    });
    r.check("formula-scan diameter = (n+1)(n+4)/2", 3, caps.formula_scan, || {
        let got = flipgraph::diameter_formula_scan(n).map_err(err)?;
        let expect = flipgraph::diameter(n).map_err(err)?;
        ensure(got == expect, || format!("{got} vs {expect}"))
    });
    r.check("antipodes realize the diameter", 3, cap_d, || {
        let (g, d) = (g()?, d()?);
        let diam = flipgraph::diameter(n).map_err(err)? as u32;
        let mut kinds = vec![AntipodeKind::ColorReversal];
        if n.is_multiple_of(2) {
            kinds.push(AntipodeKind::Rotation);
        }
        for x in g.vertices() {
            for &k in &kinds {
                let a = flipgraph::antipode(&x, k).map_err(err)?;
                ensure(d[x.index()][a.index()] == diam, || format!("{k:?} of {x}"))?;
            }
        }
        Ok(())
    });
    r.check("color-reversal antipode = reversed triangulation", 2, caps.geometry.max(2), || {
        for x in all_reps(n).map_err(err)? {
            let t = ColoredTriangulation::from_phi(&x.to_phi()).symmetry(Symmetry::ReverseColors);
            let a = flipgraph::antipode(&x, AntipodeKind::ColorReversal).map_err(err)?;
            ensure(a.to_phi() == t.phi(), || format!("{x}"))?;
        }
        Ok(())
    });
    r.check("bipartite by sign, equal classes", 2, cap_g, || {
        let b = flipgraph::bipartition_check(g()?);
        ensure(b.is_ok(), || format!("{b:?}"))
    });
    r.check("shortest representatives: length = BFS distance", 3, caps.length.min(cap_g), || {
        let g = g()?;
        let from_id = g.bfs(0);
        for (x, w) in flipgraph::shortest_representatives(n).map_err(err)? {
            let len = coxeter_length(&w.to_affine());
            ensure(len == from_id[x.index()] as u64, || format!("{x}: {len}"))?;
        }
        Ok(())
    });
    r.check("fiber distance = l(join) - l(meet)", 3, cap_d, || {
        let (g, d) = (g()?, d()?);
        let fiber_diam = n * (n + 1) / 2;
        let mut seen_max = 0;
        for x in g.vertices() {
            for y in g.vertices().filter(|y| y.top() == x.top()) {
                let expect = x.join(&y).length() - x.meet(&y).length();
                let got = d[x.index()][y.index()] as usize;
                ensure(got == expect, || format!("{x},{y}"))?;
                seen_max = seen_max.max(got);
            }
        }
        ensure(seen_max == fiber_diam, || format!("fiber diameter {seen_max}"))
    });
    r.check("length lower bound on distance", 3, cap_d, || {
        let (g, d) = (g()?, d()?);
        let mut eps = vec![0; n + 1];
        eps[n - 1] = 1;
        eps[n] = n + 3;
        let wrap = RepVector::new(n, &eps).map_err(err)?.length() as i64;
        for x in g.vertices() {
            for y in g.vertices() {
                let diff = (x.length() as i64 - y.length() as i64).abs();
                let bound = diff.min(wrap + 1 - diff);
                ensure(d[x.index()][y.index()] as i64 >= bound, || format!("{x},{y}"))?;
            }
        }
        Ok(())
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_n3() {
        let report = run(3, &Suite::ALL, &Caps::default());
        assert!(report.is_ok(), "{report}");
        assert!(report.checks.iter().any(|c| matches!(c.status, Status::Finding(_))));
    }

    #[test]
    fn caps_skip() {
        let report = run(9, &[Suite::Geometry], &Caps::default());
        assert!(report.checks.iter().all(|c| matches!(c.status, Status::Skip(_))));
        assert!(report.is_ok());
    }
}
