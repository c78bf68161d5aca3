//! Coset representatives `Rₙ = { a₀^{ε₀} a₁^{ε₁} ⋯ aₙ^{εₙ} }` with
//! `aᵢ = sᵢ⋯s₀`, `εᵢ ∈ {0,1}` for `i < n` and `0 ≤ εₙ < n+4`.
//!
//! The left weak order on `Rₙ` is dominance of suffix sums
//! `Sₖ = Σ_{i≥k} εᵢ`, which makes meet and join componentwise `min`/`max` of
//! suffix sums and the length `Σ (j+1) εⱼ = Σₖ Sₖ` a modular rank function.

use std::fmt;
use std::str::FromStr;

use crate::coxeter::Word;
use crate::error::{invalid, Error, Result};
use crate::geometry::PhiVector;
use crate::polygon_size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepVector {
    n: usize,
    /// Bit `j` holds `εⱼ` for `j < n`.
    low: u64,
    top: usize,
}

/// Outcome of normalizing `sᵢ·r` back into `Rₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorResult {
    pub rep: RepVector,
    /// False iff `sᵢ r ∈ r·Stₙ`.
    pub moved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Less,
    Greater,
    Incomparable,
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=crate::MAX_N).contains(&n) {
        Err(invalid(format!("n = {n} out of range 2..={}", crate::MAX_N)))
    } else {
        Ok(())
    }
}

impl RepVector {
    pub fn new(n: usize, eps: &[usize]) -> Result<Self> {
        check_n(n)?;
        if eps.len() != n + 1 {
            return Err(invalid(format!("expected {} exponents, got {}", n + 1, eps.len())));
        }
        let mut low = 0;
        for (j, &e) in eps[..n].iter().enumerate() {
            match e {
                0 => {}
                1 => low |= 1 << j,
                _ => return Err(invalid(format!("eps_{j} = {e} is not 0 or 1"))),
            }
        }
        Self::from_parts(n, low, eps[n])
    }

    pub fn from_parts(n: usize, low: u64, top: usize) -> Result<Self> {
        check_n(n)?;
        if low >> n != 0 {
            return Err(invalid("low exponent mask has too many bits"));
        }
        if top >= polygon_size(n) {
            return Err(invalid(format!("eps_n = {top} out of range 0..{}", polygon_size(n))));
        }
        Ok(Self { n, low, top })
    }

    fn raw(n: usize, low: u64, top: usize) -> Self {
        Self { n, low, top }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_parts(n, 0, 0)
    }

    /// `w_o = a₀a₁⋯aₙ₋₁aₙ^{n+3}`, the top of `Rₙ`.
    pub fn longest(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self::raw(n, (1 << n) - 1, n + 3))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `εⱼ` for `0 ≤ j ≤ n`.
    pub fn eps(&self, j: usize) -> usize {
        match j {
            j if j < self.n => ((self.low >> j) & 1) as usize,
            j if j == self.n => self.top,
            _ => panic!("exponent index {j} out of 0..={}", self.n),
        }
    }

    pub fn exponents(&self) -> Vec<usize> {
        (0..=self.n).map(|j| self.eps(j)).collect()
    }

    pub fn low_mask(&self) -> u64 {
        self.low
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Position in lexicographic order of `(ε₀, …, εₙ)`.
    pub fn index(&self) -> usize {
        let size = polygon_size(self.n);
        let mut high = 0usize;
        for j in 0..self.n {
            high = (high << 1) | self.eps(j);
        }
        high * size + self.top
    }

    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        check_n(n)?;
        if index >= crate::ctft_count(n) {
            return Err(invalid(format!("index {index} out of range")));
        }
        Ok(Self::from_index_unchecked(n, index))
    }

    pub(crate) fn from_index_unchecked(n: usize, index: usize) -> Self {
        let size = polygon_size(n);
        let (mut high, top) = (index / size, index % size);
        let mut low = 0;
        for j in (0..n).rev() {
            low |= ((high & 1) as u64) << j;
            high >>= 1;
        }
        Self::raw(n, low, top)
    }

    /// `ℓ(r) = Σ (j+1) εⱼ`.
    pub fn length(&self) -> usize {
        (0..=self.n).map(|j| (j + 1) * self.eps(j)).sum()
    }

    /// `[S₀, …, Sₙ]` with `Sₖ = Σ_{i≥k} εᵢ`.
    pub fn suffix_sums(&self) -> Vec<usize> {
        let mut s = vec![0; self.n + 1];
        let mut acc = 0;
        for k in (0..=self.n).rev() {
            acc += self.eps(k);
            s[k] = acc;
        }
        s
    }

    fn from_suffix_sums(n: usize, s: &[usize]) -> Self {
        let mut low = 0;
        for j in 0..n {
            let d = s[j] - s[j + 1];
            debug_assert!(d <= 1);
            low |= (d as u64) << j;
        }
        Self::raw(n, low, s[n])
    }

    /// `a₀^{ε₀} ⋯ aₙ^{εₙ}` spelled out in generators.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length());
        for j in 0..=self.n {
            for _ in 0..self.eps(j) {
                letters.extend((0..=j).rev());
            }
        }
        Word::new(self.n, letters).expect("letters are in range")
    }

    /// `φ(r·T₀) = (-Σεⱼ mod n+4; ε₀, ε₁, …, εₙ₋₁)`.
    pub fn to_phi(&self) -> PhiVector {
        let size = polygon_size(self.n);
        let total = self.low.count_ones() as usize + self.top;
        let a = (size - total % size) % size;
        PhiVector::from_packed_unchecked(self.n, a, self.low)
    }

    pub fn from_phi(v: &PhiVector) -> Result<Self> {
        check_n(v.n())?;
        let size = polygon_size(v.n());
        let ones = v.packed_bits().count_ones() as usize % size;
        let top = (2 * size - v.a() - ones) % size;
        Ok(Self::raw(v.n(), v.packed_bits(), top))
    }

    /// Normalizes `sᵢ·r` into `Rₙ·Stₙ`, following the case analysis on
    /// `(εᵢ₋₁, εᵢ)` with `ε₋₁ := 0`. The wrap cases at `i = n` reduce `εₙ`
    /// modulo `n+4` since `aₙ^{n+4} ∈ Stₙ`.
    pub fn apply_generator(&self, i: usize) -> Result<GeneratorResult> {
        let n = self.n;
        if i > n {
            return Err(invalid(format!("generator s_{i} out of range 0..={n}")));
        }
        Ok(self.apply_generator_unchecked(i))
    }

    pub(crate) fn apply_generator_unchecked(&self, i: usize) -> GeneratorResult {
        let n = self.n;
        let size = polygon_size(n);
        let moved = |rep| GeneratorResult { rep, moved: true };
        match i {
            0 => moved(Self::raw(n, self.low ^ 1, self.top)),
            i if i < n => {
                let lo = self.eps(i - 1);
                let hi = self.eps(i);
                if lo == hi {
                    GeneratorResult {
                        rep: *self,
                        moved: false,
                    }
                } else {
                    moved(Self::raw(n, self.low ^ (0b11 << (i - 1)), self.top))
                }
            }
            _ => {
                let flip = self.low ^ (1 << (n - 1));
                if self.eps(n - 1) == 1 {
                    moved(Self::raw(n, flip, (self.top + 1) % size))
                } else {
                    moved(Self::raw(n, flip, (self.top + size - 1) % size))
                }
            }
        }
    }

    /// `ε_{i-1} = 0` and `εᵢ > 0`, reading `ε₋₁ := 0`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        if i > self.n {
            return false;
        }
        let before = if i == 0 { 0 } else { self.eps(i - 1) };
        before == 0 && self.eps(i) > 0
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..=self.n).filter(|&i| self.is_left_descent(i)).collect()
    }

    /// Weak order by dominance: `r ≤ s` iff `Sₖ(r) ≤ Sₖ(s)` for every `k`.
    pub fn compare(&self, other: &RepVector) -> Comparison {
        assert_eq!(self.n, other.n);
        let (a, b) = (self.suffix_sums(), other.suffix_sums());
        let le = a.iter().zip(&b).all(|(x, y)| x <= y);
        let ge = a.iter().zip(&b).all(|(x, y)| x >= y);
        match (le, ge) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        }
    }

    pub fn le(&self, other: &RepVector) -> bool {
        matches!(self.compare(other), Comparison::Equal | Comparison::Less)
    }

    /// Upper covers: `sᵢ·r` that stays in `Rₙ` without wrapping and is one
    /// step longer.
    pub fn covers(&self) -> Vec<RepVector> {
        let len = self.length();
        (0..=self.n)
            .map(|i| self.apply_generator_unchecked(i))
            .filter(|g| g.moved && g.rep.length() == len + 1)
            .map(|g| g.rep)
            .collect()
    }

    /// Lower covers, the mirror of [`RepVector::covers`].
    pub fn covered_by(&self) -> Vec<RepVector> {
        let len = self.length();
        (0..=self.n)
            .map(|i| self.apply_generator_unchecked(i))
            .filter(|g| g.moved && g.rep.length() + 1 == len)
            .map(|g| g.rep)
            .collect()
    }

    /// Greatest lower bound: suffix sums `min(Sₖ(r), Sₖ(s))`.
    pub fn meet(&self, other: &RepVector) -> RepVector {
        assert_eq!(self.n, other.n);
        let s: Vec<usize> = self
            .suffix_sums()
            .into_iter()
            .zip(other.suffix_sums())
            .map(|(x, y)| x.min(y))
            .collect();
        Self::from_suffix_sums(self.n, &s)
    }

    /// Least upper bound: suffix sums `max(Sₖ(r), Sₖ(s))`.
    pub fn join(&self, other: &RepVector) -> RepVector {
        assert_eq!(self.n, other.n);
        let s: Vec<usize> = self
            .suffix_sums()
            .into_iter()
            .zip(other.suffix_sums())
            .map(|(x, y)| x.max(y))
            .collect();
        Self::from_suffix_sums(self.n, &s)
    }

    /// `(1-ε₀, …, 1-εₙ₋₁, n+3-εₙ)`, the order-reversing involution.
    pub fn dual(&self) -> RepVector {
        Self::raw(self.n, !self.low & ((1 << self.n) - 1), self.n + 3 - self.top)
    }

    /// Right multiplication by `aₙ^t`, i.e. `εₙ ↦ εₙ + t mod n+4`.
    pub fn rotate(&self, t: i64) -> RepVector {
        let size = polygon_size(self.n) as i64;
        let top = (self.top as i64 + t).rem_euclid(size) as usize;
        Self::raw(self.n, self.low, top)
    }
}

impl Ord for RepVector {
    /// Lexicographic on `(n, ε₀, …, εₙ)`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.index()).cmp(&(other.n, other.index()))
    }
}

impl PartialOrd for RepVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..=self.n {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.eps(j))?;
        }
        Ok(())
    }
}

impl FromStr for RepVector {
    type Err = Error;

    /// Parses `ε₀,…,εₙ`; `n` is one less than the number of entries.
    fn from_str(s: &str) -> Result<Self> {
        let eps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if eps.len() < 3 {
            return Err(Error::Parse(format!("{s:?} has fewer than 3 exponents")));
        }
        Self::new(eps.len() - 1, &eps)
    }
}

/// All of `Rₙ` in lexicographic order.
pub fn all_reps(n: usize) -> Result<impl Iterator<Item = RepVector>> {
    check_n(n)?;
    Ok((0..crate::ctft_count(n)).map(move |k| RepVector::from_index_unchecked(n, k)))
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `(1+q)(1+q²)⋯(1+qⁿ)(1+q^{n+1}+⋯+q^{(n+3)(n+1)})`.
pub fn rank_polynomial(n: usize) -> Result<Vec<u64>> {
    check_n(n)?;
    let mut p = vec![1u64];
    for j in 1..=n {
        let mut f = vec![0; j + 1];
        f[0] = 1;
        f[j] = 1;
        p = poly_mul(&p, &f);
    }
    let mut f = vec![0; (n + 3) * (n + 1) + 1];
    for k in 0..=n + 3 {
        f[k * (n + 1)] = 1;
    }
    Ok(poly_mul(&p, &f))
}

/// The length-generating function of `Rₙ`, by enumeration.
pub fn length_distribution(n: usize) -> Result<Vec<u64>> {
    let mut out = vec![0; RepVector::longest(n)?.length() + 1];
    for r in all_reps(n)? {
        out[r.length()] += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> RepVector {
        s.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(RepVector::identity(3).unwrap().length(), 0);
        assert_eq!(rep("1,0,1,2").length(), 12);
        assert_eq!(RepVector::longest(3).unwrap().length(), 30);
        assert_eq!(RepVector::longest(3).unwrap().to_string(), "1,1,1,6");
    }

    #[test]
    fn words_and_vectors() {
        assert!(RepVector::identity(3).unwrap().to_word().is_empty());
        assert_eq!(rep("0,0,0,1").to_word().to_string(), "3 2 1 0");
        assert_eq!(rep("0,0,0,1").to_phi().to_string(), "6:000");
        assert_eq!(rep("1,0,0,0").to_phi().to_string(), "6:100");
        assert_eq!(rep("1,0,1,2").to_word().to_string(), "0 2 1 0 3 2 1 0 3 2 1 0");
    }

    #[test]
    fn apply_generator_cases() {
        let g = rep("1,1,1,6").apply_generator(3).unwrap();
        assert_eq!((g.rep, g.moved), (rep("1,1,0,0"), true));
        let g = rep("1,1,0,0").apply_generator(1).unwrap();
        assert_eq!((g.rep, g.moved), (rep("1,1,0,0"), false));
        let g = rep("0,0,1,0").apply_generator(2).unwrap();
        assert_eq!((g.rep, g.moved), (rep("0,1,0,0"), true));
        assert_eq!(g.rep.length(), 2);
        let g = rep("0,0,0,0").apply_generator(3).unwrap();
        assert_eq!(g.rep, rep("0,0,1,6"));
        assert!(rep("0,0,0,0").apply_generator(4).is_err());
    }

    #[test]
    fn descents() {
        assert_eq!(rep("1,0,1,2").left_descents(), vec![0, 2]);
        assert!(RepVector::identity(3).unwrap().left_descents().is_empty());
        assert_eq!(RepVector::longest(3).unwrap().left_descents(), vec![0]);
    }

    #[test]
    fn order_and_lattice() {
        let (r, s) = (rep("1,0,0,1"), rep("0,1,1,0"));
        assert_eq!(r.compare(&s), Comparison::Incomparable);
        assert_eq!(r.meet(&s), rep("1,0,1,0"));
        assert_eq!(r.join(&s), rep("0,1,0,1"));
        assert_eq!(r.length() + s.length(), 10);
        assert_eq!(r.meet(&s).length() + r.join(&s).length(), 10);
        let id = RepVector::identity(3).unwrap();
        assert_eq!(id.covers(), vec![rep("1,0,0,0")]);
        assert_eq!(id.compare(&r), Comparison::Less);
        assert_eq!(r.compare(&r), Comparison::Equal);
    }

    #[test]
    fn duality() {
        let id = RepVector::identity(3).unwrap();
        assert_eq!(id.dual(), RepVector::longest(3).unwrap());
        let r = rep("1,0,1,2");
        assert_eq!(r.dual(), rep("0,1,0,4"));
        assert_eq!(r.dual().length(), 18);
    }

    #[test]
    fn rank_polynomial_n3() {
        let p = rank_polynomial(3).unwrap();
        assert_eq!(p.iter().sum::<u64>(), 56);
        assert_eq!(p.len() - 1, 30);
        assert_eq!(p[1], 1);
        assert_eq!(p, length_distribution(3).unwrap());
    }

    #[test]
    fn parse_and_index() {
        assert!("1,2,0,0".parse::<RepVector>().is_err());
        assert!("1,0,0,7".parse::<RepVector>().is_err());
        assert!("1,0".parse::<RepVector>().is_err());
        let all: Vec<_> = all_reps(3).unwrap().collect();
        assert_eq!(all.len(), 56);
        assert!(all.windows(2).all(|w| w[0].exponents() < w[1].exponents()));
        for (k, r) in all.iter().enumerate() {
            assert_eq!(r.index(), k);
            assert_eq!(RepVector::from_index(3, k).unwrap(), *r);
        }
    }
}
