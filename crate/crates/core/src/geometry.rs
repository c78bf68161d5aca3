//! Colored triangle-free triangulations of the convex polygon `P_{n+4}`.
//!
//! Vertices are labeled `0..n+3` counterclockwise. A triangulation without
//! interior vertices has `n+1` chords; it is triangle-free when no triangle
//! has three chord sides, which forces exactly two short chords `{a-1, a+1}`.
//! A proper coloring labels one short chord `0` and walks the dual path of
//! triangles, so every colored triangulation is determined by
//! `φ(T) = (a; b₁..bₙ)` where `a` is the center of chord `0` and `bᵢ` records
//! whether chord `i` extends chord `i-1` on the left (`0`) or right (`1`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::polygon_size;

/// A diagonal of `P_{n+4}`, stored as an unordered pair `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    lo: usize,
    hi: usize,
}

impl Chord {
    pub fn new(x: usize, y: usize, n: usize) -> Result<Self> {
        let size = polygon_size(n);
        if x >= size || y >= size {
            return Err(invalid(format!("vertex out of range for P_{size}: ({x},{y})")));
        }
        let chord = Self::unchecked(x, y);
        if !chord.is_diagonal(size) {
            return Err(invalid(format!("({x},{y}) is not a diagonal of P_{size}")));
        }
        Ok(chord)
    }

    fn unchecked(x: usize, y: usize) -> Self {
        Self {
            lo: x.min(y),
            hi: x.max(y),
        }
    }

    fn is_diagonal(&self, size: usize) -> bool {
        let d = self.hi - self.lo;
        d >= 2 && d <= size - 2
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// Center `a` if this is the short chord `{a-1, a+1}`.
    pub fn short_center(&self, n: usize) -> Option<usize> {
        let size = polygon_size(n);
        if self.hi - self.lo == 2 {
            Some(self.lo + 1)
        } else if self.lo + size - self.hi == 2 {
            Some((self.hi + 1) % size)
        } else {
            None
        }
    }

    /// Proper crossing; chords sharing an endpoint do not cross.
    pub fn crosses(&self, other: &Chord) -> bool {
        let inside = |v: usize| self.lo < v && v < self.hi;
        let shared = self.contains(other.lo) || self.contains(other.hi);
        !shared && inside(other.lo) != inside(other.hi)
    }

    fn rotated(&self, k: usize, size: usize) -> Self {
        Self::unchecked((self.lo + k) % size, (self.hi + k) % size)
    }
}

/// `φ(T) = (a; b₁..bₙ) ∈ ℤ_{n+4} × ℤ₂ⁿ`. Bit `bᵢ` is stored at position `i-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiVector {
    n: usize,
    a: usize,
    bits: u64,
}

impl PhiVector {
    pub fn new(n: usize, a: usize, bits: &[u8]) -> Result<Self> {
        if bits.len() != n {
            return Err(invalid(format!("expected {n} bits, got {}", bits.len())));
        }
        let mut packed = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => packed |= 1 << i,
                _ => return Err(invalid(format!("bit b_{} = {b} is not 0 or 1", i + 1))),
            }
        }
        Self::from_packed(n, a, packed)
    }

    /// Build from a bitmask where bit `i-1` holds `bᵢ`.
    pub fn from_packed(n: usize, a: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > crate::MAX_N {
            return Err(invalid(format!("n = {n} out of range 1..={}", crate::MAX_N)));
        }
        if a >= polygon_size(n) {
            return Err(invalid(format!("a = {a} out of range 0..{}", polygon_size(n))));
        }
        if bits >> n != 0 {
            return Err(invalid(format!("bitmask {bits:#b} has more than {n} bits")));
        }
        Ok(Self { n, a, bits })
    }

    pub(crate) fn from_packed_unchecked(n: usize, a: usize, bits: u64) -> Self {
        debug_assert!(a < polygon_size(n) && bits >> n == 0);
        Self { n, a, bits }
    }

    /// `φ(T₀) = (0; 0..0)`.
    pub fn zero(n: usize) -> Self {
        Self { n, a: 0, bits: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn packed_bits(&self) -> u64 {
        self.bits
    }

    /// `bᵢ` for `1 ≤ i ≤ n`.
    pub fn bit(&self, i: usize) -> u8 {
        assert!((1..=self.n).contains(&i), "bit index {i} out of 1..={}", self.n);
        ((self.bits >> (i - 1)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n).map(|i| self.bit(i)).collect()
    }
}

impl fmt::Display for PhiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.a)?;
        for i in 1..=self.n {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl FromStr for PhiVector {
    type Err = Error;

    /// Parses `a:b₁b₂…bₙ`; `n` is the number of bits.
    fn from_str(s: &str) -> Result<Self> {
        let (a, bits) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `a:bits`, got {s:?}")))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad center {a:?}")))?;
        let bits = bits
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad bit {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits.len(), a, &bits)
    }
}

/// One failed invariant of a candidate colored triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    InvalidN(usize),
    WrongChordCount { expected: usize, found: usize },
    VertexOutOfRange { color: usize, vertex: usize },
    NotADiagonal { color: usize },
    DuplicateChord { first: usize, second: usize },
    Crossing { first: usize, second: usize },
    InnerTriangle([usize; 3]),
    ChordZeroNotShort,
    ImproperColoring { color: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidN(n) => write!(f, "n = {n} must be positive"),
            Violation::WrongChordCount { expected, found } => {
                write!(f, "wrong chord count: expected {expected}, found {found}")
            }
            Violation::VertexOutOfRange { color, vertex } => {
                write!(f, "chord {color}: vertex {vertex} out of range")
            }
            Violation::NotADiagonal { color } => {
                write!(f, "chord {color}: endpoints equal or adjacent")
            }
            Violation::DuplicateChord { first, second } => {
                write!(f, "chords {first} and {second} coincide")
            }
            Violation::Crossing { first, second } => {
                write!(f, "chords {first} and {second} cross")
            }
            Violation::InnerTriangle([x, y, z]) => {
                write!(f, "triangle ({x},{y},{z}) has three chord sides")
            }
            Violation::ChordZeroNotShort => write!(f, "chord 0 is not short"),
            Violation::ImproperColoring { color } => write!(
                f,
                "improper coloring: chord {color} shares no triangle with chord {}",
                color - 1
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Edge incidence of a triangulation: polygon sides plus chords.
struct Adjacency {
    size: usize,
    edge: Vec<bool>,
}

impl Adjacency {
    fn new(size: usize, chords: impl IntoIterator<Item = Chord>) -> Self {
        let mut adj = Self {
            size,
            edge: vec![false; size * size],
        };
        for v in 0..size {
            adj.set(v, (v + 1) % size);
        }
        for c in chords {
            adj.set(c.lo, c.hi);
        }
        adj
    }

    fn set(&mut self, x: usize, y: usize) {
        self.edge[x * self.size + y] = true;
        self.edge[y * self.size + x] = true;
    }

    fn has(&self, x: usize, y: usize) -> bool {
        self.edge[x * self.size + y]
    }

    /// The (at most two) apexes of triangles on `c`.
    fn apexes(&self, c: Chord) -> Vec<usize> {
        (0..self.size)
            .filter(|&z| z != c.lo && z != c.hi && self.has(c.lo, z) && self.has(c.hi, z))
            .collect()
    }
}

fn is_boundary(x: usize, y: usize, size: usize) -> bool {
    (x + 1) % size == y || (y + 1) % size == x
}

fn share_triangle(adj: &Adjacency, c: Chord, d: Chord) -> bool {
    let other = |c: Chord, v: usize| if c.lo == v { c.hi } else { c.lo };
    [c.lo, c.hi]
        .into_iter()
        .filter(|&v| d.contains(v))
        .any(|v| {
            let (u, w) = (other(c, v), other(d, v));
            u != w && adj.has(u, w)
        })
}

/// Checks every invariant of a colored triangle-free triangulation on the raw
/// candidate `chords[color] = (x, y)`. Violations are collected, not thrown.
pub fn validate(n: usize, chords: &[(usize, usize)]) -> ValidationReport {
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(Violation::InvalidN(n));
        return ValidationReport { violations };
    }
    let size = polygon_size(n);
    if chords.len() != n + 1 {
        violations.push(Violation::WrongChordCount {
            expected: n + 1,
            found: chords.len(),
        });
    }

    let mut parsed = Vec::with_capacity(chords.len());
    for (color, &(x, y)) in chords.iter().enumerate() {
        if let Some(&vertex) = [x, y].iter().find(|&&v| v >= size) {
            violations.push(Violation::VertexOutOfRange { color, vertex });
            continue;
        }
        let c = Chord::unchecked(x, y);
        if !c.is_diagonal(size) {
            violations.push(Violation::NotADiagonal { color });
            continue;
        }
        parsed.push(c);
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    for i in 0..parsed.len() {
        for j in i + 1..parsed.len() {
            if parsed[i] == parsed[j] {
                violations.push(Violation::DuplicateChord { first: i, second: j });
            } else if parsed[i].crosses(&parsed[j]) {
                violations.push(Violation::Crossing { first: i, second: j });
            }
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    let adj = Adjacency::new(size, parsed.iter().copied());
    let mut inner = HashSet::new();
    for &c in &parsed {
        for z in adj.apexes(c) {
            if !is_boundary(c.lo, z, size) && !is_boundary(c.hi, z, size) {
                let mut t = [c.lo, c.hi, z];
                t.sort_unstable();
                inner.insert(t);
            }
        }
    }
    let mut inner: Vec<_> = inner.into_iter().collect();
    inner.sort_unstable();
    violations.extend(inner.into_iter().map(Violation::InnerTriangle));

    if parsed[0].short_center(n).is_none() {
        violations.push(Violation::ChordZeroNotShort);
    }
    if let Some(color) =
        (1..parsed.len()).find(|&i| !share_triangle(&adj, parsed[i - 1], parsed[i]))
    {
        violations.push(Violation::ImproperColoring { color });
    }
    ValidationReport { violations }
}

/// A properly colored triangle-free triangulation; `chords[i]` has color `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredTriangulation {
    n: usize,
    chords: Vec<Chord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Add `k` to every vertex label modulo `n+4`.
    Rotate(i64),
    /// Replace color `i` by `n-i`.
    ReverseColors,
}

impl ColoredTriangulation {
    pub fn new(n: usize, chords: &[(usize, usize)]) -> Result<Self> {
        let report = validate(n, chords);
        if !report.is_ok() {
            return Err(invalid(format!("not a colored triangle-free triangulation: {report}")));
        }
        Ok(Self {
            n,
            chords: chords.iter().map(|&(x, y)| Chord::unchecked(x, y)).collect(),
        })
    }

    /// The canonical colored star `T₀ = φ⁻¹(0; 0..0)`.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 || n > crate::MAX_N {
            return Err(invalid(format!("n = {n} out of range")));
        }
        Ok(Self::from_phi(&PhiVector::zero(n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn chord(&self, color: usize) -> Chord {
        self.chords[color]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.chords.iter().map(Chord::endpoints).collect()
    }

    /// The chord set with colors forgotten, sorted.
    pub fn uncolored(&self) -> Vec<Chord> {
        let mut v = self.chords.clone();
        v.sort_unstable();
        v
    }

    pub fn short_chords(&self) -> Vec<usize> {
        (0..=self.n)
            .filter(|&i| self.chords[i].short_center(self.n).is_some())
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self.n, &self.pairs())
    }

    /// `φ⁻¹`: chord `0` is `[a-1, a+1]`; chord `i` grows chord `i-1` by one
    /// vertex on the left when `bᵢ = 0` and on the right when `bᵢ = 1`.
    pub fn from_phi(v: &PhiVector) -> Self {
        let n = v.n();
        let size = polygon_size(n);
        let mut left = (v.a() + size - 1) % size;
        let mut right = (v.a() + 1) % size;
        let mut chords = Vec::with_capacity(n + 1);
        chords.push(Chord::unchecked(left, right));
        for i in 1..=n {
            if v.bit(i) == 0 {
                left = (left + size - 1) % size;
            } else {
                right = (right + 1) % size;
            }
            chords.push(Chord::unchecked(left, right));
        }
        Self { n, chords }
    }

    pub fn phi(&self) -> PhiVector {
        let n = self.n;
        let size = polygon_size(n);
        let a = self.chords[0]
            .short_center(n)
            .expect("chord 0 of a valid triangulation is short");
        let mut left = (a + size - 1) % size;
        let mut right = (a + 1) % size;
        let mut bits = 0u64;
        for i in 1..=n {
            let c = self.chords[i];
            let grow_left = Chord::unchecked((left + size - 1) % size, right);
            if c == grow_left {
                left = (left + size - 1) % size;
            } else {
                debug_assert_eq!(c, Chord::unchecked(left, (right + 1) % size));
                right = (right + 1) % size;
                bits |= 1 << (i - 1);
            }
        }
        PhiVector::from_packed_unchecked(n, a, bits)
    }

    /// Flips the chord colored `color`. When the result is no longer a properly
    /// colored triangle-free triangulation the input is returned unchanged.
    pub fn flip(&self, color: usize) -> Result<Self> {
        if color > self.n {
            return Err(invalid(format!("color {color} out of range 0..={}", self.n)));
        }
        let size = polygon_size(self.n);
        let adj = Adjacency::new(size, self.chords.iter().copied());
        let c = self.chords[color];
        let apexes = adj.apexes(c);
        debug_assert_eq!(apexes.len(), 2, "every chord lies in two triangles");
        let mut pairs = self.pairs();
        pairs[color] = (apexes[0], apexes[1]);
        Ok(match Self::new(self.n, &pairs) {
            Ok(t) => t,
            Err(_) => self.clone(),
        })
    }

    pub fn symmetry(&self, kind: Symmetry) -> Self {
        let size = polygon_size(self.n);
        match kind {
            Symmetry::Rotate(k) => {
                let k = k.rem_euclid(size as i64) as usize;
                Self {
                    n: self.n,
                    chords: self.chords.iter().map(|c| c.rotated(k, size)).collect(),
                }
            }
            Symmetry::ReverseColors => Self {
                n: self.n,
                chords: self.chords.iter().rev().copied().collect(),
            },
        }
    }

    /// Endpoints oriented so that the counterclockwise arc from the first to
    /// the second contains the center of chord 0.
    pub fn oriented(&self, color: usize) -> (usize, usize) {
        let size = polygon_size(self.n);
        let a = self.chords[0].short_center(self.n).unwrap_or(0);
        let Chord { lo, hi } = self.chords[color];
        let arc = |from: usize, to: usize| (to + size - from) % size;
        if arc(lo, a) < arc(lo, hi) {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }
}

impl fmt::Display for ColoredTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; chords:", self.n)?;
        for i in 0..=self.n {
            let (x, y) = self.oriented(i);
            write!(f, " {i}:({x},{y})")?;
        }
        Ok(())
    }
}

impl FromStr for ColoredTriangulation {
    type Err = Error;

    /// Parses `n=3; chords: 0:(6,1) 1:(5,1) 2:(4,1) 3:(3,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("{what} in {s:?}"));
        let (head, body) = s.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let n: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| bad("bad `n=` header"))?;
        let body = body
            .trim()
            .strip_prefix("chords:")
            .ok_or_else(|| bad("missing `chords:`"))?;
        let mut slots: Vec<Option<(usize, usize)>> = vec![None; n + 1];
        for item in body.split_whitespace() {
            let (color, pair) = item.split_once(':').ok_or_else(|| bad("bad chord item"))?;
            let color: usize = color.parse().map_err(|_| bad("bad color"))?;
            let pair = pair
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| bad("bad chord parentheses"))?;
            let (x, y) = pair.split_once(',').ok_or_else(|| bad("bad chord pair"))?;
            let x = x.trim().parse().map_err(|_| bad("bad vertex"))?;
            let y = y.trim().parse().map_err(|_| bad("bad vertex"))?;
            let slot = slots.get_mut(color).ok_or_else(|| bad("color out of range"))?;
            if slot.replace((x, y)).is_some() {
                return Err(bad("repeated color"));
            }
        }
        let pairs = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("missing color"))?;
        Self::new(n, &pairs)
    }
}

/// Every colored triangle-free triangulation of `P_{n+4}`, via `φ⁻¹` over the
/// whole codomain (center-major, then bits).
pub fn enumerate_ctft(n: usize) -> Result<Vec<ColoredTriangulation>> {
    if n == 0 || n > crate::MAX_N {
        return Err(invalid(format!("n = {n} must be in 1..={}", crate::MAX_N)));
    }
    Ok(all_phi_vectors(n)
        .map(|v| ColoredTriangulation::from_phi(&v))
        .collect())
}

/// All of `ℤ_{n+4} × ℤ₂ⁿ`, center-major.
pub fn all_phi_vectors(n: usize) -> impl Iterator<Item = PhiVector> {
    let size = polygon_size(n);
    (0..size).flat_map(move |a| (0..1u64 << n).map(move |b| PhiVector::from_packed_unchecked(n, a, b)))
}
