mod common;

use common::{solve, t56};
use ghostchar_poly::MultiPoly;
use num_complex::Complex64;

fn quadratic_roots(b: f64, c: f64) -> [f64; 2] {
    let d = (b * b - 4.0 * c).sqrt();
    [(-b - d) / 2.0, (-b + d) / 2.0]
}

/// The ten `(x12, x13)` pairs in closed form.
fn t56_expected() -> Vec<(f64, f64)> {
    let mut out = vec![(2.0, 2.0), (0.0, -1.0), (1.0, 1.0), (-2.0, 1.0)];
    out.extend(quadratic_roots(-5.0, 5.0).map(|a| (a, -1.0 + 2.0 * a)));
    out.extend(quadratic_roots(-1.0, -1.0).map(|a| (a, 1.0)));
    out.extend(quadratic_roots(1.0, -1.0).map(|a| (a, -1.0 - a)));
    out
}

#[test]
fn t56_point_set_matches_closed_forms() {
    let s = t56();
    assert_eq!(s.points.len(), 10);
    let mut unmatched = t56_expected();
    for i in 0..s.points.len() {
        let (a, b) = s.ab(i);
        let pos = unmatched
            .iter()
            .position(|&(ea, eb)| (a - ea).norm() <= 1e-8 && (b - eb).norm() <= 1e-8)
            .unwrap_or_else(|| panic!("unexpected point ({a}, {b})"));
        unmatched.swap_remove(pos);
    }
    assert!(unmatched.is_empty());
}

#[test]
fn t56_points_are_exact_and_lift_to_every_arc() {
    let s = t56();
    assert_eq!(s.reduced.m, 5);
    assert_eq!(s.diagram.arc_count, 24);
    for (p, x) in s.points.iter().zip(&s.full) {
        assert!(p.exact_verified);
        assert!(p.residual <= 1e-10);
        assert_eq!(x.n, 24);
        assert!(x.residual <= 1e-9, "lift residual {}", x.residual);
        assert!(s.relations.max_residual(x).0 <= 1e-9);
    }
}

#[test]
fn t56_symmetry_classes_are_cyclic() {
    let s = t56();
    for x in &s.full {
        for p in 1..=5 {
            let q = p % 5 + 1;
            let r = (p + 1) % 5 + 1;
            assert!((x.get(p, q) - x.get(1, 2)).norm() < 1e-9);
            assert!((x.get(p, r) - x.get(1, 3)).norm() < 1e-9);
        }
    }
}

/// The five displayed defining polynomials of the reduced set, in `a = x12`, `b = x13`.
const PRINTED: [&str; 5] = [
    "a^6 - 5*a^4*b + 4*a^3*b + 6*a^2*b^2 - 3*a^3 - 6*a*b^2 - b^3 + 2*a*b + b^2 + 3*a - 2",
    "a^7 - 5*a^5*b - a^5 + 4*a^4*b + 6*a^3*b^2 - 3*a^4 + 4*a^3*b - 6*a^2*b^2 - a*b^3 - a^2*b - 2*a*b^2 + 5*a^2 + 2*b^2 - a - 2",
    "a^5*b - a^4*b - 4*a^3*b^2 + a^4 + 6*a^2*b^2 + 3*a*b^3 - 4*a^2*b - 2*a*b^2 - 3*b^3 - a^2 + 2*a*b - a + 3*b",
    "a^6*b - a^6 - 5*a^4*b^2 + 4*a^4*b + 4*a^3*b^2 + 6*a^2*b^3 + a^4 - 6*a^3*b - 3*a^2*b^2 - 6*a*b^3 - b^4 + 2*a^3 - 3*a^2*b + 4*a*b^2 + b^3 + 5*a*b + b^2 - 3*a - b",
    "a^5*b - a^5 - 4*a^3*b^2 + 3*a^3*b + 3*a^2*b^2 + 3*a*b^3 + a^3 - 4*a^2*b - a*b^2 - 2*b^3 + a^2 - 2*a*b + 2*b",
];

#[test]
fn t56_points_satisfy_printed_polynomials() {
    let s = t56();
    let polys: Vec<MultiPoly> = PRINTED
        .iter()
        .map(|r| r.parse::<MultiPoly>().unwrap())
        .collect();
    for i in 0..s.points.len() {
        let (a, b) = s.ab(i);
        for p in &polys {
            let v: Complex64 = p.eval(|v| if v == "a" { a } else { b });
            assert!(v.norm() <= 1e-10, "{p} = {v} at ({a}, {b})");
        }
    }
}

#[test]
fn t56_reduction_shape() {
    let s = t56();
    assert_eq!(s.reduced.unknowns(), vec!["x1_2".to_string(), "x1_3".to_string()]);
    assert_eq!(s.reduced.defining_polys.len(), 5);
    assert_eq!(s.chain.steps.len(), 24 * 23 / 2 - 10);
}

#[test]
fn trefoil_points_are_roots_of_the_closure_quadratic() {
    // All three arcs are symmetric; closing one crossing gives 2 = x^2 - x.
    let s = solve("torus:2,3");
    let mut got: Vec<f64> = s.points.iter().map(|p| p.coords.values().next().unwrap().re).collect();
    got.sort_by(f64::total_cmp);
    assert_eq!(got.len(), 2);
    assert!((got[0] + 1.0).abs() < 1e-10 && (got[1] - 2.0).abs() < 1e-10);
}

/// Two-bridge knots of determinant `D` carry `(D + 1) / 2` points.
#[test]
fn two_bridge_point_counts_follow_the_determinant() {
    for (spec, det) in [("torus:2,3", 3), ("braid:3:1 -2 1 -2", 5), ("torus:2,5", 5), ("torus:2,7", 7)] {
        let s = solve(spec);
        assert_eq!(s.points.len(), (det as usize).div_ceil(2), "{spec}");
    }
}

#[test]
fn reduced_solutions_satisfy_the_unreduced_system() {
    use ghostchar::f2::{eliminate_to_seed, generate_f2_relations};
    let s = t56();
    let (_, unreduced) = eliminate_to_seed(&generate_f2_relations(&s.diagram), &s.diagram).unwrap();
    assert_eq!(unreduced.unknowns().len(), 10);
    for x in &s.full {
        for p in &unreduced.all_polys() {
            let v: Complex64 = p.eval(|sym| {
                let (i, j) = ghostchar::f2::parse_pair_symbol(sym).expect("pair symbol");
                x.get(i, j)
            });
            assert!(v.norm() <= 1e-8 * (1.0 + p.terms().count() as f64), "{p}: {v}");
        }
    }
}

#[test]
fn solve_is_stable_under_reordering_polynomials() {
    use ghostchar::f2::{solve_reduced, SolveConfig};
    let s = t56();
    let mut rp = s.reduced.clone();
    rp.defining_polys.reverse();
    rp.origins.reverse();
    rp.redundant_polys.reverse();
    let (pts, _) = solve_reduced(&rp, &SolveConfig::default()).unwrap();
    assert_eq!(pts.len(), 10);
    let key = |p: &ghostchar::f2::F2Point| format!("{:?}", p.exact);
    let mut a: Vec<String> = pts.iter().map(key).collect();
    let mut b: Vec<String> = s.points.iter().map(key).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}
