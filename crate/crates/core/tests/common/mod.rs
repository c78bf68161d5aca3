//! Brute-force reference implementations used by the integration tests and
//! the acceptance runner. Nothing here calls into the closed forms being
//! checked.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use tft_core::{AffineMap, RepVector};

pub type Triangle = [usize; 3];
type Diagonal = (usize, usize);

/// Every triangulation of the convex `m`-gon, as sorted triangle lists.
pub fn triangulations(m: usize) -> Vec<Vec<Triangle>> {
    let mut memo = HashMap::new();
    sub_triangulations(0, m - 1, &mut memo)
}

fn sub_triangulations(
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), Vec<Vec<Triangle>>>,
) -> Vec<Vec<Triangle>> {
    if j < i + 2 {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(&(i, j)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        let left = sub_triangulations(i, k, memo);
        let right = sub_triangulations(k, j, memo);
        for l in &left {
            for r in &right {
                let mut t = l.clone();
                t.extend_from_slice(r);
                t.push([i, k, j]);
                t.sort();
                out.push(t);
            }
        }
    }
    memo.insert((i, j), out.clone());
    out
}

fn is_side(m: usize, a: usize, b: usize) -> bool {
    let d = a.abs_diff(b);
    d == 1 || d == m - 1
}

fn sides(t: &Triangle) -> [(usize, usize); 3] {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
}

pub fn diagonals(m: usize, tris: &[Triangle]) -> BTreeSet<(usize, usize)> {
    tris.iter()
        .flat_map(sides)
        .filter(|&(a, b)| !is_side(m, a, b))
        .collect()
}

pub fn is_triangle_free(m: usize, tris: &[Triangle]) -> bool {
    tris.iter()
        .all(|t| sides(t).iter().any(|&(a, b)| is_side(m, a, b)))
}

pub fn is_short(m: usize, (a, b): (usize, usize)) -> bool {
    let d = a.abs_diff(b);
    d == 2 || d == m - 2
}

/// All proper colorings: sequences of distinct diagonals starting at a short
/// one, consecutive entries sharing a triangle.
pub fn proper_colorings(m: usize, tris: &[Triangle]) -> Vec<Vec<(usize, usize)>> {
    let diags: Vec<_> = diagonals(m, tris).into_iter().collect();
    let mut adjacent: HashSet<(Diagonal, Diagonal)> = HashSet::new();
    for t in tris {
        let s = sides(t);
        for x in s {
            for y in s {
                if x != y {
                    adjacent.insert((x, y));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    for &d in diags.iter().filter(|&&d| is_short(m, d)) {
        path.push(d);
        extend_coloring(&diags, &adjacent, &mut path, &mut out);
        path.pop();
    }
    out
}

fn extend_coloring(
    diags: &[(usize, usize)],
    adjacent: &HashSet<(Diagonal, Diagonal)>,
    path: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if path.len() == diags.len() {
        out.push(path.clone());
        return;
    }
    let last = *path.last().unwrap();
    for &d in diags {
        if !path.contains(&d) && adjacent.contains(&(last, d)) {
            path.push(d);
            extend_coloring(diags, adjacent, path, out);
            path.pop();
        }
    }
}

/// All colored triangle-free triangulations of the `(n+4)`-gon.
pub fn colored_triangle_free(n: usize) -> Vec<Vec<(usize, usize)>> {
    let m = n + 4;
    triangulations(m)
        .iter()
        .filter(|t| is_triangle_free(m, t))
        .flat_map(|t| proper_colorings(m, t))
        .collect()
}

/// Applies a word, rightmost letter first, to a point scaled by `n+1`.
/// Generators: `s₀` negates `x₁`, `sᵢ` swaps `xᵢ, xᵢ₊₁`, `sₙ` sends `xₙ` to `2 − xₙ`.
pub fn walk_point(n: usize, letters: &[usize]) -> Vec<i64> {
    let q = (n + 1) as i64;
    let mut x: Vec<i64> = (1..=n as i64).collect();
    for &i in letters.iter().rev() {
        match i {
            0 => x[0] = -x[0],
            i if i == n => x[n - 1] = 2 * q - x[n - 1],
            i => x.swap(i - 1, i),
        }
    }
    x
}

fn crossings(from: i64, to: i64, step: i64) -> u64 {
    let (lo, hi) = (from.min(to), from.max(to));
    (lo + 1..hi).filter(|v| v.rem_euclid(step) == 0).count() as u64
}

/// Number of walls `xₖ ∈ ℤ`, `xᵢ ± xⱼ ∈ 2ℤ` separating the base point from its image.
pub fn hyperplane_length(n: usize, letters: &[usize]) -> u64 {
    let q = (n + 1) as i64;
    let p: Vec<i64> = (1..=n as i64).collect();
    let w = walk_point(n, letters);
    let mut total = 0;
    for k in 0..n {
        total += crossings(p[k], w[k], q);
    }
    for i in 0..n {
        for j in i + 1..n {
            total += crossings(p[i] + p[j], w[i] + w[j], 2 * q);
            total += crossings(p[i] - p[j], w[i] - w[j], 2 * q);
        }
    }
    total
}

/// Word lengths of all group elements up to `depth`, by Cayley-graph BFS.
pub fn cayley_lengths(n: usize, depth: usize) -> HashMap<AffineMap, usize> {
    let gens: Vec<AffineMap> = (0..=n).map(|i| AffineMap::generator(n, i)).collect();
    let mut dist = HashMap::from([(AffineMap::identity(n), 0)]);
    let mut queue = VecDeque::from([AffineMap::identity(n)]);
    while let Some(m) = queue.pop_front() {
        let d = dist[&m];
        if d == depth {
            continue;
        }
        for g in &gens {
            let next = g.compose(&m);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Left weak order on the group elements of `reps`, as a reachability matrix
/// built from `sᵢ·r` steps that raise the hyperplane length by one.
pub fn weak_order(n: usize, reps: &[RepVector]) -> Vec<Vec<bool>> {
    let maps: HashMap<AffineMap, usize> = reps
        .iter()
        .enumerate()
        .map(|(k, r)| (r.to_word().to_affine(), k))
        .collect();
    let lengths: Vec<u64> = reps.iter().map(|r| hyperplane_length(n, r.to_word().letters())).collect();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    for (k, r) in reps.iter().enumerate() {
        let m = r.to_word().to_affine();
        for i in 0..=n {
            if let Some(&s) = maps.get(&AffineMap::generator(n, i).compose(&m)) {
                if lengths[s] == lengths[k] + 1 {
                    up[k].push(s);
                }
            }
        }
    }
    let count = reps.len();
    let mut le = vec![vec![false; count]; count];
    for start in 0..count {
        let mut stack = vec![start];
        le[start][start] = true;
        while let Some(u) = stack.pop() {
            for &v in &up[u] {
                if !le[start][v] {
                    le[start][v] = true;
                    stack.push(v);
                }
            }
        }
    }
    le
}

/// Greatest common lower bound under `le`, if unique.
pub fn brute_glb(le: &[Vec<bool>], x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..le.len()).filter(|&z| le[z][x] && le[z][y]).collect();
    let top: Vec<usize> = lower
        .iter()
        .copied()
        .filter(|&z| lower.iter().all(|&w| le[w][z]))
        .collect();
    (top.len() == 1).then(|| top[0])
}

pub fn brute_lub(le: &[Vec<bool>], x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..le.len()).filter(|&z| le[x][z] && le[y][z]).collect();
    let bottom: Vec<usize> = upper
        .iter()
        .copied()
        .filter(|&z| upper.iter().all(|&w| le[z][w]))
        .collect();
    (bottom.len() == 1).then(|| bottom[0])
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Vertices `vᵢ = eₙ₋ᵢ₊₁ + ⋯ + eₙ` of the simplex spanned by the base alcove.
pub fn alcove_vertices(n: usize) -> Vec<Vec<BigRational>> {
    (1..=n)
        .map(|i| (1..=n).map(|k| q((k > n - i) as i64)).collect())
        .collect()
}

/// `wᵢ = 2(vᵢ − (i/n)·𝟙)` for `1 ≤ i < n`, spanning the sum-zero hyperplane.
pub fn projected_vertices(n: usize) -> Vec<Vec<BigRational>> {
    let v = alcove_vertices(n);
    (1..n)
        .map(|i| {
            let shift = BigRational::new(BigInt::from(i), BigInt::from(n));
            v[i - 1].iter().map(|x| q(2) * (x - &shift)).collect()
        })
        .collect()
}

pub fn gram(vectors: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    vectors
        .iter()
        .map(|a| {
            vectors
                .iter()
                .map(|b| a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| s + x * y))
                .collect()
        })
        .collect()
}

/// Determinant by clearing denominators and running fraction-free Bareiss.
pub fn bareiss_det(m: &[Vec<BigRational>]) -> BigRational {
    let size = m.len();
    if size == 0 {
        return BigRational::one();
    }
    let mut denom = BigInt::one();
    for row in m {
        for x in row {
            denom = num_integer_lcm(&denom, x.denom());
        }
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = BigInt::from(sign) * &a[size - 1][size - 1];
    BigRational::new(det, denom.pow(size as u32))
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    a / &x * b
}

/// Seeded pairs of vertex indices.
pub fn random_pairs(count: usize, vertices: usize, seed: u64) -> Vec<(usize, usize)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
        .collect()
}
