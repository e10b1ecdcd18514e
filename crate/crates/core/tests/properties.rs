mod common;

use std::collections::BTreeMap;

use common::t56;
use ghostchar::cover::{branched_cover_presentation, tietze_reduce, wirtinger_presentation};
use ghostchar::diagram::{braid_closure, torus_braid, BraidWord};
use ghostchar::mat2::Mat2;
use ghostchar::repvar::{printed_t56_witness, seed_targets, t56_parabolic_witness, verify_witness};
use ghostchar::slice::rectangle_on;
use num_complex::Complex64;
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn sl2(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Mat2 {
    let a = Complex64::new(a.0, a.1);
    let b = Complex64::new(b.0, b.1);
    let c = Complex64::new(c.0, c.1);
    Mat2::new(a, b, c, (Complex64::new(1.0, 0.0) + b * c) / a)
}

fn entry() -> impl Strategy<Value = (f64, f64)> {
    (-1.5f64..1.5, -1.5f64..1.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torus_closures_are_knots_with_distinct_crossing_arcs(p in 2usize..6, q in 2usize..8) {
        prop_assume!(gcd(p, q) == 1);
        let b = torus_braid(p, q).unwrap();
        prop_assert_eq!(b.component_count(), 1);
        let d = braid_closure(&b).unwrap();
        prop_assert_eq!(d.arc_count, d.crossings.len());
        prop_assert_eq!(d.crossings.len(), (p - 1) * q);
        for c in &d.crossings {
            prop_assert!(c.over_arc != c.in_under_arc && c.over_arc != c.out_under_arc && c.in_under_arc != c.out_under_arc);
        }
    }

    #[test]
    fn knot_closures_have_as_many_arcs_as_crossings(
        strands in 2usize..5,
        raw in prop::collection::vec((1i32..5, any::<bool>()), 1..14),
    ) {
        let letters: Vec<i32> = raw.iter().map(|&(g, s)| {
            let g = (g - 1) % (strands as i32 - 1) + 1;
            if s { g } else { -g }
        }).collect();
        let b = BraidWord::new(strands, letters).unwrap();
        prop_assume!(b.component_count() == 1);
        if let Ok(d) = braid_closure(&b) {
            prop_assert_eq!(d.arc_count, d.crossings.len());
        }
    }

    #[test]
    fn rectangles_are_invariant_under_simultaneous_permutation(
        point in 0usize..10,
        labels in prop::sample::subsequence((1usize..=24).collect::<Vec<_>>(), 4),
        perm in Just([0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let x = &t56().full[point];
        let idx: [usize; 4] = [labels[0], labels[1], labels[2], labels[3]];
        let permuted = perm.map(|k| idx[k]);
        let a = rectangle_on(x, idx);
        let b = rectangle_on(x, permuted);
        prop_assert!((a.value - b.value).norm() <= 1e-9 * (1.0 + a.value.norm()));
        prop_assert_eq!(a.exact, b.exact);
    }

    #[test]
    fn conjugated_witnesses_still_verify(a in entry(), b in entry(), c in entry(), which in 0usize..2) {
        prop_assume!(Complex64::new(a.0, a.1).norm() > 0.3);
        let g = sl2(a, b, c);
        let s = t56();
        let cover = branched_cover_presentation(&tietze_reduce(&wirtinger_presentation(&s.diagram), 5).unwrap()).unwrap();
        let (mats, point) = if which == 0 { (printed_t56_witness(), (0.0, -1.0)) } else { (t56_parabolic_witness(), (-2.0, 1.0)) };
        let targets: BTreeMap<_, _> = seed_targets(&s.points[s.find(point.0, point.1)], &s.reduced).unwrap();
        let conj: Vec<Mat2> = mats.iter().map(|x| x.conjugate_by(&g)).collect();
        let w = verify_witness(&conj, &cover, &targets, 1e-8);
        prop_assert!(w.is_ok(), "{:?}", w.err());
    }
}
