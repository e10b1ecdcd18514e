use std::collections::HashMap;

use ghostchar_poly::snf::IntMatrix;
use ghostchar_poly::{
    buchberger, int, resultant, smith_normal_form, uni_roots, GroebnerConfig, Ideal, MonomialOrder, MultiPoly,
    Rational,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

/// Random polynomial in x, y, z with small integer coefficients and degree ≤ 3.
fn arb_poly(vars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(0u32..=2, vars)), 1..5).prop_map(move |terms| {
        let mut p = MultiPoly::zero();
        for (c, exps) in terms {
            let mut t = MultiPoly::from_int(c);
            for (i, e) in exps.into_iter().enumerate() {
                t = &t * &MultiPoly::var(VARS[i]).pow(e);
            }
            p = &p + &t;
        }
        p
    })
}

fn nonzero_poly(vars: usize) -> impl Strategy<Value = MultiPoly> {
    arb_poly(vars).prop_filter("nonzero", |p| !p.is_zero())
}

fn small_cfg() -> GroebnerConfig {
    GroebnerConfig { max_pairs: 5_000, max_degree: 30 }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(nonzero_poly(2), 1..4), f in arb_poly(3)) {
        let ideal = Ideal::with_vars(vec!["x".into(), "y".into(), "z".into()], gens);
        if let Ok(gb) = buchberger(&ideal, MonomialOrder::GrevLex, &small_cfg()) {
            let once = gb.normal_form(&f);
            let twice = gb.normal_form(&once);
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn generators_reduce_to_zero(gens in prop::collection::vec(nonzero_poly(3), 1..4), lex in any::<bool>()) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        let ideal = Ideal::with_vars(vec!["x".into(), "y".into(), "z".into()], gens.clone());
        if let Ok(gb) = buchberger(&ideal, order, &small_cfg()) {
            for g in &gens {
                prop_assert!(gb.normal_form(g).is_zero(), "generator {} survives", g);
            }
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in prop::collection::vec(nonzero_poly(2), 2..4)) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let a = buchberger(&Ideal::with_vars(vars.clone(), gens.clone()), MonomialOrder::GrevLex, &small_cfg());
        let mut rev = gens.clone();
        rev.reverse();
        let b = buchberger(&Ideal::with_vars(vars, rev), MonomialOrder::GrevLex, &small_cfg());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.basis, b.basis);
        }
    }

    #[test]
    fn uni_roots_account_for_degree(roots in prop::collection::vec(-6i64..=6, 1..7), extra in 0i64..=3) {
        // (z - r_1)...(z - r_k) (z^2 + extra)
        let z = MultiPoly::var("z");
        let mut f = MultiPoly::one();
        for &r in &roots {
            f = &f * &(&z - &MultiPoly::from_int(r));
        }
        f = &f * &(&(&z * &z) + &MultiPoly::from_int(extra));
        let degree = f.degree_in("z") as usize;
        let set = uni_roots(&f).unwrap();
        prop_assert_eq!(set.total_multiplicity(), degree);
        for &r in &roots {
            let hit = set.roots.iter().any(|x| (x.value.re - r as f64).abs() <= 1e-10 && x.value.im.abs() <= 1e-10);
            prop_assert!(hit, "root {} missing from {:?}", r, set.values());
        }
    }

    #[test]
    fn smith_form_preserves_determinant(entries in prop::collection::vec(-9i64..=9, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let m = IntMatrix::from_i64(&rows);
        let det = m.determinant();
        prop_assume!(!det.is_zero());
        let d = smith_normal_form(&m);
        let prod: BigInt = d.iter().product();
        prop_assert_eq!(prod, det.abs());
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn resultant_vanishes_at_common_zero(p in nonzero_poly(2), q in nonzero_poly(2), x0 in -3i64..=3, y0 in -3i64..=3) {
        let at = |f: &MultiPoly| -> Rational {
            f.eval(|v| if v == "x" { int(x0) } else { int(y0) })
        };
        let p = &(&p - &MultiPoly::constant(at(&p))) + &(&MultiPoly::var("y") - &MultiPoly::from_int(y0));
        let q = &(&q - &MultiPoly::constant(at(&q))) + &(&MultiPoly::var("y") - &MultiPoly::from_int(y0)).pow(2);
        prop_assume!(p.degree_in("y") > 0 && q.degree_in("y") > 0);
        let r = resultant(&p, &q, "y").unwrap();
        let mut b = HashMap::new();
        b.insert("x".to_string(), MultiPoly::from_int(x0));
        prop_assert!(r.substitute(&b).is_zero());
    }

    #[test]
    fn text_format_round_trips(p in arb_poly(3)) {
        let back: MultiPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn ring_laws(a in arb_poly(3), b in arb_poly(3), c in arb_poly(2)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }
}
