mod common;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use tft_core::coxeter::{self, coxeter_length};
use tft_core::geometry::enumerate_ctft;
use tft_core::representatives::all_reps;
use tft_core::RepVector;

fn normalized(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=6 {
        let ours: HashSet<Vec<(usize, usize)>> =
            enumerate_ctft(n).unwrap().iter().map(|t| normalized(&t.pairs())).collect();
        let brute: HashSet<Vec<(usize, usize)>> = common::colored_triangle_free(n).into_iter().collect();
        assert_eq!(ours.len(), (n + 4) << n, "n={n}");
        assert_eq!(ours, brute, "n={n}");
    }
}

#[test]
fn triangle_free_means_two_short_chords() {
    for n in 1..=6 {
        let m = n + 4;
        for t in common::triangulations(m) {
            let shorts = common::diagonals(m, &t).into_iter().filter(|&d| common::is_short(m, d)).count();
            assert_eq!(common::is_triangle_free(m, &t), shorts == 2, "n={n} {t:?}");
        }
    }
}

#[test]
fn uncolored_count_is_catalan_filtered() {
    let counts: Vec<usize> = (1..=5)
        .map(|n| {
            let m = n + 4;
            common::triangulations(m).iter().filter(|t| common::is_triangle_free(m, t)).count()
        })
        .collect();
    assert_eq!(counts, [5, 12, 28, 64, 144]);
    assert_eq!(common::triangulations(7).len(), 42);
}

#[test]
fn hyperplane_count_agrees_with_cayley_bfs() {
    for (n, depth) in [(2, 18), (3, 16)] {
        let balls = common::cayley_lengths(n, depth);
        for (m, &d) in &balls {
            assert_eq!(coxeter_length(m), d as u64, "n={n} {m:?}");
        }
        for r in all_reps(n).unwrap() {
            let m = r.to_word().to_affine();
            if let Some(&d) = balls.get(&m) {
                assert_eq!(d, r.length(), "n={n} {r}");
            }
        }
    }
}

#[test]
fn walked_point_matches_affine_map() {
    for n in 2..=5 {
        let q = (n + 1) as i64;
        let base: Vec<i64> = (1..=n as i64).collect();
        for r in all_reps(n).unwrap() {
            let w = r.to_word();
            let via_map = w.to_affine().apply_scaled(&base, q);
            assert_eq!(via_map, common::walk_point(n, w.letters()), "{r}");
            assert_eq!(common::hyperplane_length(n, w.letters()), r.length() as u64, "{r}");
        }
    }
}

#[test]
fn lattice_operations_match_weak_order() {
    for n in 2..=3 {
        let reps: Vec<RepVector> = all_reps(n).unwrap().collect();
        let le = common::weak_order(n, &reps);
        for (i, x) in reps.iter().enumerate() {
            for (j, y) in reps.iter().enumerate() {
                assert_eq!(x.le(y), le[i][j], "{x} <= {y}");
                assert_eq!(Some(x.meet(y).index()), common::brute_glb(&le, i, j));
                assert_eq!(Some(x.join(y).index()), common::brute_lub(&le, i, j));
            }
        }
    }
}

#[test]
fn gram_matrices_from_vertices() {
    for n in 2..=8 {
        let a = common::gram(&common::alcove_vertices(n));
        let b = common::gram(&common::projected_vertices(n));
        assert_eq!(a, coxeter::gram_a(n), "A, n={n}");
        assert_eq!(b, coxeter::gram_b(n), "B, n={n}");
        let g = coxeter::gram_and_volumes(n).unwrap();
        assert_eq!(common::bareiss_det(&a), g.det_a);
        assert_eq!(common::bareiss_det(&b), g.det_b);
        let expect_b = BigRational::new(BigInt::from(4).pow(n as u32 - 1), BigInt::from(n));
        assert_eq!(g.det_b, expect_b);
    }
}

#[test]
fn shortest_words_are_reduced() {
    for n in 3..=4 {
        let lengths: BTreeSet<u64> = tft_core::flipgraph::shortest_representatives(n)
            .unwrap()
            .iter()
            .map(|(_, w)| common::hyperplane_length(n, w.letters()))
            .collect();
        let diameter = tft_core::flipgraph::diameter(n).unwrap() as u64;
        assert_eq!(lengths.last().copied(), Some(diameter));
    }
}
