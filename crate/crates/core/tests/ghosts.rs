mod common;

use common::{solve, t56};
use ghostchar::slice::{classify_all, classify_ghost, hexagon_lift, rectangle_on, rectangle_residual, FailedRelation, SliceOptions};
use ghostchar_poly::{QuadNumber, Rational};

fn is_ghost(s: &common::Solved, i: usize, opts: &SliceOptions) -> bool {
    classify_ghost(&s.points[i], &s.full[i], s.reduced.m, opts).is_ghost
}

#[test]
fn t56_ghosts_are_exactly_three() {
    let s = t56();
    let opts = SliceOptions::default();
    let ghosts = [(0.0, -1.0), (1.0, 1.0), (-2.0, 1.0)];
    let ghost_idx: Vec<usize> = ghosts.iter().map(|&(a, b)| s.find(a, b)).collect();
    for i in 0..s.points.len() {
        let r = classify_ghost(&s.points[i], &s.full[i], 5, &opts);
        assert_eq!(r.is_ghost, ghost_idx.contains(&i), "point {:?}", s.ab(i));
        if r.is_ghost {
            match r.failed_relation {
                Some(FailedRelation::Rectangle { indices, exact: Some(q), .. }) => {
                    assert_eq!(&indices[..2], &[1, 2]);
                    assert!(!q.is_zero());
                }
                other => panic!("expected an exact rectangle failure, got {other:?}"),
            }
        } else {
            assert!(r.rectangles.iter().all(|x| x.satisfied(opts.tol)));
            assert!(r.hexagon.consistent, "hexagon residual {}", r.hexagon.max_residual);
        }
    }
}

#[test]
fn t56_one_one_rectangle_is_five() {
    let s = t56();
    let i = s.find(1.0, 1.0);
    let r = rectangle_residual(&s.full[i], 3, 4);
    assert_eq!(r.exact, Some(QuadNumber::rational(Rational::from_integer(5.into()))));
    assert!((r.value.re - 5.0).abs() < 1e-12 && r.value.im.abs() < 1e-12);
}

#[test]
fn t56_ghost_rectangles_by_hand() {
    // With the cyclic classes, every rectangle on {1,2,a,b} ⊂ {1..5} is the
    // determinant of a symmetric 4x4 matrix in x12 = p and x13 = q.
    let det4 = |m: [[f64; 4]; 4]| -> f64 {
        let mut m = m;
        let mut d = 1.0;
        for k in 0..4 {
            let piv = (k..4).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
            if m[piv][k] == 0.0 {
                return 0.0;
            }
            if piv != k {
                m.swap(piv, k);
                d = -d;
            }
            d *= m[k][k];
            for i in k + 1..4 {
                let f = m[i][k] / m[k][k];
                for j in k..4 {
                    m[i][j] -= f * m[k][j];
                }
            }
        }
        d
    };
    let s = t56();
    for (p, q) in [(0.0, -1.0), (1.0, 1.0), (-2.0, 1.0)] {
        let x = |i: usize, j: usize| -> f64 {
            let d = (i as i32 - j as i32).rem_euclid(5);
            match d.min(5 - d) {
                0 => 2.0,
                1 => p,
                _ => q,
            }
        };
        let idx = [1, 2, 3, 4];
        let m: [[f64; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| x(idx[r], idx[c])));
        let got = rectangle_residual(&s.full[s.find(p, q)], 3, 4).value.re;
        assert!((got - det4(m)).abs() < 1e-9, "({p},{q}): {got} vs {}", det4(m));
        assert!(got.abs() > 1e-6);
    }
}

#[test]
fn t56_non_ghosts_pass_over_every_arc() {
    let s = t56();
    let opts = SliceOptions { full_range: true, ..SliceOptions::default() };
    let pairs: Vec<_> = s.points.iter().cloned().zip(s.full.iter().cloned()).collect();
    let reports = classify_all(&pairs, 5, &opts);
    assert_eq!(reports.iter().filter(|r| r.is_ghost).count(), 3);
    for r in reports.iter().filter(|r| !r.is_ghost) {
        assert_eq!(r.rectangles.len(), 22 * 21 / 2);
    }
}

#[test]
fn all_twos_hexagon_is_trivially_consistent() {
    let s = t56();
    let x = &s.full[s.find(2.0, 2.0)];
    let h = hexagon_lift(x, &[1, 2, 3, 4, 5], 6, 1e-8);
    assert!(h.consistent);
    assert_eq!(h.triple_values.len(), 10);
    // Every 3x3 minor of the all-twos matrix vanishes, so every triple value is 0.
    assert!(h.triple_values.values().all(|v| v.norm() < 1e-12));
}

#[test]
fn rectangle_on_matches_rectangle_residual() {
    let s = t56();
    for x in &s.full {
        let a = rectangle_residual(x, 4, 7);
        let b = rectangle_on(x, [1, 2, 4, 7]);
        assert!((a.value - b.value).norm() < 1e-12);
    }
}

#[test]
fn small_knots_have_no_ghosts() {
    for spec in ["torus:2,3", "braid:3:1 -2 1 -2", "torus:2,5", "torus:3,4"] {
        let s = solve(spec);
        let opts = SliceOptions::default();
        assert!((0..s.points.len()).all(|i| !is_ghost(&s, i, &opts)), "{spec}");
    }
}

#[test]
fn t45_has_a_ghost() {
    let s = solve("torus:4,5");
    let opts = SliceOptions::default();
    assert!((0..s.points.len()).any(|i| is_ghost(&s, i, &opts)));
}
