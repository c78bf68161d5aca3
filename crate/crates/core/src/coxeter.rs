//! Words in the generators `s₀..sₙ` of C̃ₙ, their action on φ-vectors and
//! triangulations, and the faithful affine realization on `ℝⁿ`:
//!
//! ```text
//! s₀ : x₁ ↦ -x₁        sᵢ : xᵢ ↔ xᵢ₊₁  (0 < i < n)        sₙ : xₙ ↦ 2 - xₙ
//! ```
//!
//! A word `s_{i₁}⋯s_{i_k}` acts as `s_{i₁}∘⋯∘s_{i_k}`: the rightmost letter
//! acts first.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{ColoredTriangulation, PhiVector};
use crate::polygon_size;

fn check_group_n(n: usize) -> Result<()> {
    if !(2..=crate::MAX_N).contains(&n) {
        Err(invalid(format!(
            "the group action needs 2 <= n <= {}, got {n}",
            crate::MAX_N
        )))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        check_group_n(n)?;
        if let Some(&bad) = letters.iter().find(|&&i| i > n) {
            return Err(invalid(format!("generator s_{bad} out of range 0..={n}")));
        }
        Ok(Self { n, letters })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Self::new(n, vec![i])
    }

    /// `aᵢ = sᵢ sᵢ₋₁ ⋯ s₀`.
    pub fn a(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(invalid(format!("a_{i} out of range 0..={n}")));
        }
        Self::new(n, (0..=i).rev().collect())
    }

    /// `g₀ = s₀ s₁ ⋯ sₙ₋₂ sₙ sₙ₋₁ sₙ sₙ₋₂ ⋯ s₁ s₀`.
    pub fn g0(n: usize) -> Result<Self> {
        check_group_n(n)?;
        let mut letters: Vec<usize> = (0..n - 1).collect();
        letters.extend([n, n - 1, n]);
        letters.extend((0..n - 1).rev());
        Self::new(n, letters)
    }

    /// `gₙ = (sₙ ⋯ s₀)^{n+4}`.
    pub fn gn(n: usize) -> Result<Self> {
        Ok(Self::a(n, n)?.pow(polygon_size(n)))
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        Self {
            n: self.n,
            letters: self.letters.repeat(k),
        }
    }

    pub fn to_affine(&self) -> AffineMap {
        word_to_affine(self)
    }

    /// The same action computed by geometric flips.
    pub fn act_on_triangulation(&self, t: &ColoredTriangulation) -> Result<ColoredTriangulation> {
        if t.n() != self.n {
            return Err(invalid(format!("word has n = {}, triangulation n = {}", self.n, t.n())));
        }
        let mut t = t.clone();
        for &i in self.letters.iter().rev() {
            t = t.flip(i)?;
        }
        Ok(t)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        assert_eq!(self.n, rhs.n, "multiplying words of different rank");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { n: self.n, letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// One generator on a φ-vector. These rules are what flipping chord `i`
/// does to `φ(T)` with counterclockwise labels:
///
/// - `s₀` toggles `b₁` and moves the center to `a-1` when `b₁ = 0`, to `a+1`
///   when `b₁ = 1`;
/// - `sᵢ` (`0 < i < n`) swaps `bᵢ` and `bᵢ₊₁`;
/// - `sₙ` toggles `bₙ`.
pub fn act_generator(i: usize, v: PhiVector) -> PhiVector {
    let n = v.n();
    let size = polygon_size(n);
    let bits = v.packed_bits();
    let (a, bits) = match i {
        0 => {
            let a = if bits & 1 == 0 {
                (v.a() + size - 1) % size
            } else {
                (v.a() + 1) % size
            };
            (a, bits ^ 1)
        }
        i if i < n => {
            let lo = (bits >> (i - 1)) & 1;
            let hi = (bits >> i) & 1;
            if lo == hi {
                (v.a(), bits)
            } else {
                (v.a(), bits ^ (0b11 << (i - 1)))
            }
        }
        i if i == n => (v.a(), bits ^ (1 << (n - 1))),
        _ => panic!("generator s_{i} out of range for n = {n}"),
    };
    PhiVector::from_packed_unchecked(n, a, bits)
}

pub fn act_on_phi(w: &Word, v: PhiVector) -> Result<PhiVector> {
    if w.n() != v.n() {
        return Err(invalid(format!("word has n = {}, vector n = {}", w.n(), v.n())));
    }
    Ok(w.letters().iter().rev().fold(v, |v, &i| act_generator(i, v)))
}

/// `x ↦ M x + t` with `M` a signed permutation: `(Mx)_k = signs[k]·x[perm[k]]`.
/// Coordinates are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    perm: Vec<usize>,
    signs: Vec<i8>,
    trans: Vec<i64>,
}

impl AffineMap {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>, trans: Vec<i64>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n || trans.len() != n {
            return Err(invalid("perm, signs and trans must have equal length"));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(invalid(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(invalid("signs must be +1 or -1"));
        }
        if trans.iter().any(|t| t % 2 != 0) {
            return Err(invalid("translation entries must be even"));
        }
        Ok(Self { perm, signs, trans })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
            trans: vec![0; n],
        }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut m = Self::identity(n);
        match i {
            0 => m.signs[0] = -1,
            i if i < n => m.perm.swap(i - 1, i),
            i if i == n => {
                m.signs[n - 1] = -1;
                m.trans[n - 1] = 2;
            }
            _ => panic!("generator s_{i} out of range for n = {n}"),
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn trans(&self) -> &[i64] {
        &self.trans
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        assert_eq!(self.dim(), other.dim());
        let n = self.dim();
        let mut out = Self::identity(n);
        for k in 0..n {
            let p = self.perm[k];
            let s = self.signs[k];
            out.perm[k] = other.perm[p];
            out.signs[k] = s * other.signs[p];
            out.trans[k] = s as i64 * other.trans[p] + self.trans[k];
        }
        out
    }

    pub fn inverse(&self) -> AffineMap {
        let n = self.dim();
        let mut out = Self::identity(n);
        for k in 0..n {
            let p = self.perm[k];
            out.perm[p] = k;
            out.signs[p] = self.signs[k];
            out.trans[p] = -(self.signs[k] as i64) * self.trans[k];
        }
        out
    }

    /// Applies the map to `x / scale`, returning the numerators over `scale`.
    pub fn apply_scaled(&self, x: &[i64], scale: i64) -> Vec<i64> {
        (0..self.dim())
            .map(|k| self.signs[k] as i64 * x[self.perm[k]] + self.trans[k] * scale)
            .collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.apply_scaled(x, 1)
    }
}

impl Mul for &AffineMap {
    type Output = AffineMap;

    fn mul(self, rhs: &AffineMap) -> AffineMap {
        self.compose(rhs)
    }
}

pub fn word_to_affine(w: &Word) -> AffineMap {
    w.letters()
        .iter()
        .fold(AffineMap::identity(w.n()), |m, &i| m.compose(&AffineMap::generator(w.n(), i)))
}

/// Multiples of `q` strictly between `u` and `v` (neither is a multiple).
fn walls_between(u: i64, v: i64, q: i64) -> u64 {
    u.div_euclid(q).abs_diff(v.div_euclid(q))
}

/// Coxeter length as the number of reflecting hyperplanes
/// `{xᵢ = k}` and `{xᵢ ± xⱼ = 2k}` separating the base alcove
/// `0 < x₁ < ⋯ < xₙ < 1` from its image. The base point is `pᵢ = i/(n+1)`,
/// kept exact by scaling all coordinates by `n+1`.
pub fn coxeter_length(m: &AffineMap) -> u64 {
    let n = m.dim();
    let q = n as i64 + 1;
    let p: Vec<i64> = (1..=n as i64).collect();
    let image = m.apply_scaled(&p, q);
    let mut count = 0;
    for i in 0..n {
        count += walls_between(p[i], image[i], q);
        for j in i + 1..n {
            count += walls_between(p[i] - p[j], image[i] - image[j], 2 * q);
            count += walls_between(p[i] + p[j], image[i] + image[j], 2 * q);
        }
    }
    count
}

/// `g₀, s₁, …, sₙ₋₁, gₙ`, generators of the stabilizer of `T₀`.
pub fn stabilizer_generators(n: usize) -> Result<Vec<(String, Word)>> {
    check_group_n(n)?;
    let mut gens = vec![("g_0".to_string(), Word::g0(n)?)];
    for i in 1..n {
        gens.push((format!("s_{i}"), Word::generator(n, i)?));
    }
    gens.push((format!("g_{n}"), Word::gn(n)?));
    Ok(gens)
}

#[derive(Debug, Clone)]
pub struct StabilizerReport {
    pub fixes: Vec<(String, bool)>,
    pub orbit_size: usize,
    pub expected_orbit: usize,
}

impl StabilizerReport {
    pub fn is_ok(&self) -> bool {
        self.fixes.iter().all(|(_, ok)| *ok) && self.orbit_size == self.expected_orbit
    }
}

/// Flat index `a·2ⁿ + bits` of a φ-vector.
pub(crate) fn phi_index(v: PhiVector) -> usize {
    (v.a() << v.n()) | v.packed_bits() as usize
}

/// Orbit of `v` under `s₀..sₙ`, by breadth-first search.
pub fn orbit(v: PhiVector) -> Vec<PhiVector> {
    let n = v.n();
    let total = crate::ctft_count(n);
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([v]);
    seen[phi_index(v)] = true;
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for i in 0..=n {
            let w = act_generator(i, u);
            if !std::mem::replace(&mut seen[phi_index(w)], true) {
                queue.push_back(w);
            }
        }
    }
    out
}

pub fn verify_stabilizer(n: usize) -> Result<StabilizerReport> {
    let zero = PhiVector::zero(n);
    let fixes = stabilizer_generators(n)?
        .into_iter()
        .map(|(name, w)| {
            let fixed = act_on_phi(&w, zero).map(|v| v == zero).unwrap_or(false);
            (name, fixed)
        })
        .collect();
    Ok(StabilizerReport {
        fixes,
        orbit_size: orbit(zero).len(),
        expected_orbit: crate::ctft_count(n),
    })
}

/// One defining relation `(sᵢsⱼ)^m = 1` and whether it holds.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub word: Word,
    pub label: String,
    pub as_map: bool,
    /// `None` when the vector sweep was skipped.
    pub on_vectors: Option<bool>,
}

pub fn defining_relations(n: usize) -> Result<Vec<(String, Word)>> {
    check_group_n(n)?;
    let mut out = Vec::new();
    for i in 0..=n {
        out.push((format!("s_{i}^2"), Word::new(n, vec![i, i])?));
    }
    for i in 0..=n {
        for j in i + 1..=n {
            let m = match j - i {
                1 if i == 0 || i == n - 1 => 4,
                1 => 3,
                _ => 2,
            };
            out.push((format!("(s_{i} s_{j})^{m}"), Word::new(n, vec![i, j])?.pow(m)));
        }
    }
    Ok(out)
}

/// Checks every defining relation as a map identity, and on all `(n+4)·2ⁿ`
/// vectors when `n ≤ max_sweep_n`.
pub fn verify_relations(n: usize, max_sweep_n: usize) -> Result<Vec<RelationCheck>> {
    let vectors: Vec<PhiVector> = if n <= max_sweep_n {
        crate::geometry::all_phi_vectors(n).collect()
    } else {
        Vec::new()
    };
    defining_relations(n)?
        .into_iter()
        .map(|(label, word)| {
            let on_vectors = (n <= max_sweep_n).then(|| {
                vectors
                    .iter()
                    .all(|&v| act_on_phi(&word, v).map(|u| u == v).unwrap_or(false))
            });
            Ok(RelationCheck {
                as_map: word_to_affine(&word).is_identity(),
                word,
                label,
                on_vectors,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramVolumes {
    pub det_a: BigRational,
    pub det_b: BigRational,
    pub vol_fund1: BigRational,
    pub vol_fund2: BigRational,
    pub ratio: BigRational,
}

pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let k = m.len();
    let mut det = BigRational::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..k {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Exact square root of a non-negative rational, if it is one.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (num, den) = (x.numer(), x.denom());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    (&rn * &rn == *num && &rd * &rd == *den).then(|| BigRational::new(rn, rd))
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `A = (min(i,j))` of size `n×n`.
pub fn gram_a(n: usize) -> Vec<Vec<BigRational>> {
    (1..=n)
        .map(|i| (1..=n).map(|j| BigRational::from_integer(i.min(j).into())).collect())
        .collect()
}

/// `B = ((4/n)·min(i,j)·min(n-i,n-j))` of size `(n-1)×(n-1)`.
pub fn gram_b(n: usize) -> Vec<Vec<BigRational>> {
    let scale = BigRational::new(4.into(), BigInt::from(n));
    (1..n)
        .map(|i| {
            (1..n)
                .map(|j| &scale * BigInt::from(i.min(j) * (n - i).min(n - j)))
                .collect()
        })
        .collect()
}

/// Gram determinants of the two fundamental regions and their volume ratio,
/// all in exact rationals:
/// `vol(Fund₁) = √det A / n!` and
/// `vol(Fund₂) = (2(n+4)/n) · √n · √det B / (n-1)!`.
pub fn gram_and_volumes(n: usize) -> Result<GramVolumes> {
    check_group_n(n)?;
    let det_a = determinant(gram_a(n));
    let det_b = determinant(gram_b(n));
    let not_square = |what: &str| Error::Unsupported(format!("{what} is not a rational square"));
    let vol_fund1 = rational_sqrt(&det_a).ok_or_else(|| not_square("det A"))?
        / BigRational::from_integer(factorial(n));
    let n_det_b = &det_b * BigInt::from(n);
    let vol_fund2 = BigRational::new(BigInt::from(2 * (n + 4)), BigInt::from(n))
        * rational_sqrt(&n_det_b).ok_or_else(|| not_square("n·det B"))?
        / BigRational::from_integer(factorial(n - 1));
    let ratio = &vol_fund2 / &vol_fund1;
    Ok(GramVolumes {
        det_a,
        det_b,
        vol_fund1,
        vol_fund2,
        ratio,
    })
}
