use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use proptest::prelude::*;
use tft_core::flipgraph::{self, AntipodeKind, FlipGraph};
use tft_core::geometry::Symmetry;
use tft_core::{ColoredTriangulation, PhiVector, RepVector};

fn graph(n: usize) -> &'static FlipGraph {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static FlipGraph>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry(n)
        .or_insert_with(|| Box::leak(Box::new(FlipGraph::build(n).unwrap())))
}

fn bfs_dist(r: &RepVector, s: &RepVector) -> usize {
    graph(r.n()).bfs_distance(r, s).unwrap()
}

fn rep_strategy(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RepVector> {
    ns.prop_flat_map(|n| {
        let size = (n + 4) << n;
        (0..size).prop_map(move |k| RepVector::from_index(n, k).unwrap())
    })
}

fn rep_pair(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (RepVector, RepVector)> {
    ns.prop_flat_map(|n| {
        let size = (n + 4) << n;
        (0..size, 0..size).prop_map(move |(a, b)| {
            (RepVector::from_index(n, a).unwrap(), RepVector::from_index(n, b).unwrap())
        })
    })
}

fn phi_strategy(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PhiVector> {
    ns.prop_flat_map(|n| {
        (0..n + 4, 0..1u64 << n).prop_map(move |(a, bits)| PhiVector::from_packed(n, a, bits).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn formula_matches_bfs((r, s) in rep_pair(3..=7)) {
        prop_assert_eq!(flipgraph::distance_formula(&r, &s).unwrap(), bfs_dist(&r, &s));
    }

    #[test]
    fn distance_is_rotation_invariant((r, s) in rep_pair(3..=7), t in -20i64..20) {
        let d = flipgraph::distance_formula(&r, &s).unwrap();
        prop_assert_eq!(flipgraph::distance_formula(&r.rotate(t), &s.rotate(t)).unwrap(), d);
    }

    #[test]
    fn fiber_distance_is_join_minus_meet((r, s) in rep_pair(3..=6)) {
        let s = RepVector::new(r.n(), &{
            let mut e = s.exponents();
            e[r.n()] = r.top();
            e
        }).unwrap();
        let expect = r.join(&s).length() - r.meet(&s).length();
        prop_assert_eq!(bfs_dist(&r, &s), expect);
        prop_assert!(expect <= r.n() * (r.n() + 1) / 2);
    }

    #[test]
    fn length_difference_bounds_distance((r, s) in rep_pair(3..=7)) {
        let d = flipgraph::distance_formula(&r, &s).unwrap() as i64;
        let n = r.n();
        let mut eps = vec![0; n + 1];
        eps[n - 1] = 1;
        eps[n] = n + 3;
        let wrap = RepVector::new(n, &eps).unwrap().length() as i64;
        let diff = (r.length() as i64 - s.length() as i64).abs();
        prop_assert!(d >= diff.min(wrap + 1 - diff));
        prop_assert!(d as usize <= flipgraph::diameter(n).unwrap());
    }

    #[test]
    fn dual_reverses_order((r, s) in rep_pair(2..=8)) {
        prop_assert_eq!(r.le(&s), s.dual().le(&r.dual()));
        prop_assert_eq!(r.meet(&s).dual(), r.dual().join(&s.dual()));
    }

    #[test]
    fn antipodes_are_far(r in rep_strategy(3..=7)) {
        let diam = flipgraph::diameter(r.n()).unwrap();
        let a = flipgraph::antipode(&r, AntipodeKind::ColorReversal).unwrap();
        prop_assert_eq!(bfs_dist(&r, &a), diam);
        if r.n() % 2 == 0 {
            let b = flipgraph::antipode(&r, AntipodeKind::Rotation).unwrap();
            prop_assert_eq!(bfs_dist(&r, &b), diam);
        }
    }

    #[test]
    fn flips_commute_with_rotation(v in phi_strategy(1..=9), k in -30i64..30) {
        let t = ColoredTriangulation::from_phi(&v);
        for i in 0..=t.n() {
            let a = t.flip(i).unwrap().symmetry(Symmetry::Rotate(k));
            let b = t.symmetry(Symmetry::Rotate(k)).flip(i).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn fixed_points_of_flips(r in rep_strategy(2..=10)) {
        let n = r.n();
        let v = r.to_phi();
        let t = ColoredTriangulation::from_phi(&v);
        prop_assert_ne!(t.flip(0).unwrap(), t.clone());
        prop_assert_ne!(t.flip(n).unwrap(), t.clone());
        for i in 1..n {
            prop_assert_eq!(t.flip(i).unwrap() == t, v.bit(i) == v.bit(i + 1));
        }
    }

    #[test]
    fn text_forms_round_trip(r in rep_strategy(2..=12)) {
        let v = r.to_phi();
        let t = ColoredTriangulation::from_phi(&v);
        prop_assert_eq!(r.to_string().parse::<RepVector>().unwrap(), r);
        prop_assert_eq!(v.to_string().parse::<PhiVector>().unwrap(), v);
        prop_assert_eq!(t.to_string().parse::<ColoredTriangulation>().unwrap(), t.clone());
        prop_assert_eq!(RepVector::from_phi(&t.phi()).unwrap(), r);
    }

    #[test]
    fn color_reversal_is_geometric(r in rep_strategy(2..=12)) {
        let t = ColoredTriangulation::from_phi(&r.to_phi()).symmetry(Symmetry::ReverseColors);
        let a = flipgraph::antipode(&r, AntipodeKind::ColorReversal).unwrap();
        prop_assert_eq!(a.to_phi(), t.phi());
    }
}
