use ghostchar::cover::{
    abelianization, branched_cover_presentation, evaluate_word, printed_t56_cover, tietze_reduce,
    tietze_reduce_detailed, wirtinger_presentation, GroupPresentation, GroupWord,
};
use ghostchar::diagram::{braid_closure, parse_knot, KnotDiagram};
use ghostchar::mat2::Mat2;
use num_bigint::BigInt;
use num_complex::Complex64;

fn cover_of(spec: &str) -> (KnotDiagram, GroupPresentation, GroupPresentation, GroupPresentation) {
    let d = braid_closure(&parse_knot(spec).unwrap()).unwrap();
    let w = wirtinger_presentation(&d);
    let t = tietze_reduce(&w, d.strands()).unwrap();
    let c = branched_cover_presentation(&t).unwrap();
    (d, w, t, c)
}

/// Integer polynomial quotient, exact division assumed; coefficients low to high.
fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let mut q = vec![0; num.len() - den.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + den.len() - 1] / den[den.len() - 1];
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            r[k + i] -= c * d;
        }
    }
    assert!(r.iter().all(|&x| x == 0), "division not exact");
    q
}

fn t_pow_minus_one(n: usize) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `|Δ(-1)|` for the torus knot, `Δ = (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
fn torus_determinant(p: usize, q: usize) -> i64 {
    let num = mul(&t_pow_minus_one(p * q), &t_pow_minus_one(1));
    let den = mul(&t_pow_minus_one(p), &t_pow_minus_one(q));
    let delta = div_exact(&num, &den);
    delta.iter().enumerate().map(|(i, c)| if i % 2 == 0 { *c } else { -c }).sum::<i64>().abs()
}

fn torsion(c: &GroupPresentation) -> Vec<BigInt> {
    abelianization(c).into_iter().filter(|x| *x != BigInt::from(1)).collect()
}

#[test]
fn t56_cover_shape() {
    let (d, w, t, c) = cover_of("torus:5,6");
    assert_eq!(d.arc_count, 24);
    assert_eq!(w.generators.len(), 24);
    assert_eq!(w.relators.len(), 23);
    assert_eq!(t.generators.len(), 5);
    assert_eq!(t.relators.len(), 4);
    assert_eq!(c.generators, vec!["x2", "x3", "x4", "x5"]);
    assert_eq!(c.relators.len(), 8);
    assert!(c.relators.iter().all(|r| r.is_freely_reduced()));
}

#[test]
fn cover_homology_matches_alexander_determinant() {
    for (spec, det) in [
        ("torus:5,6", torus_determinant(5, 6)),
        ("torus:2,3", torus_determinant(2, 3)),
        ("torus:4,5", torus_determinant(4, 5)),
        ("torus:2,7", torus_determinant(2, 7)),
        // Δ = -t + 3 - t^-1
        ("braid:3:1 -2 1 -2", 5),
    ] {
        let (_, _, _, c) = cover_of(spec);
        assert_eq!(torsion(&c), vec![BigInt::from(det)], "{spec}");
    }
    assert_eq!(torus_determinant(5, 6), 5);
    assert_eq!(torus_determinant(2, 3), 3);
}

#[test]
fn knot_group_abelianizes_to_integers() {
    let (_, w, t, _) = cover_of("torus:5,6");
    assert_eq!(torsion(&w), vec![BigInt::from(0)]);
    assert_eq!(torsion(&t), vec![BigInt::from(0)]);
}

#[test]
fn t56_cover_relators_equal_printed_words() {
    let (_, _, _, c) = cover_of("torus:5,6");
    let printed = printed_t56_cover();
    assert_eq!(c.generators, printed.generators);
    assert_eq!(c.relators, printed.relators);
}

/// Trace-free binary dihedral image of a meridian with colour `c` mod `n`.
fn dihedral(c: i64, n: i64) -> Mat2 {
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * c as f64 / n as f64);
    Mat2::new(Complex64::new(0.0, 0.0), z, -z.inv(), Complex64::new(0.0, 0.0))
}

/// A non-constant Fox colouring mod `n`, found by brute force over the seed arcs.
fn fox_colouring(d: &KnotDiagram, n: i64) -> Option<Vec<i64>> {
    let m = d.strands();
    let total = (n as u64).pow(m as u32 - 1);
    for code in 1..total {
        let mut col: Vec<Option<i64>> = vec![None; d.arc_count + 1];
        col[1] = Some(0);
        let mut k = code;
        for a in 2..=m {
            col[a] = Some((k % n as u64) as i64);
            k /= n as u64;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for c in &d.crossings {
                if let (Some(o), Some(i), None) = (col[c.over_arc], col[c.in_under_arc], col[c.out_under_arc]) {
                    col[c.out_under_arc] = Some((2 * o - i).rem_euclid(n));
                    changed = true;
                }
            }
        }
        let col: Option<Vec<i64>> = col[1..].iter().copied().collect();
        let Some(col) = col else { continue };
        let ok = d
            .crossings
            .iter()
            .all(|c| (2 * col[c.over_arc - 1] - col[c.in_under_arc - 1] - col[c.out_under_arc - 1]).rem_euclid(n) == 0);
        if ok {
            return Some(col);
        }
    }
    None
}

#[test]
fn dihedral_representation_satisfies_every_presentation() {
    let d = braid_closure(&parse_knot("torus:5,6").unwrap()).unwrap();
    let col = fox_colouring(&d, 5).expect("T(5,6) is 5-colourable");
    let meridians: Vec<Mat2> = col.iter().map(|&c| dihedral(c, 5)).collect();
    let w = wirtinger_presentation(&d);
    for r in &w.relators {
        assert!(evaluate_word(r, &meridians).unwrap().distance(&Mat2::identity()) < 1e-12);
    }
    let red = tietze_reduce_detailed(&w, 5).unwrap();
    for (g, word) in &red.expansions {
        let v = evaluate_word(word, &meridians[..5]).unwrap();
        assert!(v.distance(&meridians[*g]) < 1e-10, "expansion of m{}", g + 1);
    }
    for r in &red.presentation.relators {
        assert!(evaluate_word(r, &meridians[..5]).unwrap().distance(&Mat2::identity()) < 1e-10);
    }
    let c = branched_cover_presentation(&red.presentation).unwrap();
    // Meridian images square to -I; the involutions i*A_p have the same pairwise
    // products up to the sign, and those products satisfy the cover relators.
    let xs: Vec<Mat2> = (1..5).map(|p| Mat2::scalar(Complex64::new(-1.0, 0.0)) * meridians[0] * meridians[p]).collect();
    for r in c.relators.iter().chain(&printed_t56_cover().relators) {
        assert!(evaluate_word(r, &xs).unwrap().distance(&Mat2::identity()) < 1e-10);
    }
}

#[test]
fn words_round_trip_through_text() {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    for text in ["w^-1 x^-1 y z^-1 w", "x y^-1 x", "1"] {
        let w = GroupWord::parse(text, &names).unwrap();
        assert_eq!(w.render(&names), text);
    }
    assert!(GroupWord::parse("q", &names).is_err());
}

#[test]
fn presentation_json_shape() {
    let c = printed_t56_cover();
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
    assert_eq!(v["relators"].as_array().unwrap().len(), 8);
    assert_eq!(v["relators"][0][0], serde_json::json!(["x5", -1]));
    assert_eq!(v["relators_text"][3], "x5^-1 x2^-1 x3 x4^-1 x5 x4^-1 x3 x2^-1 x5^-1 x4");
}
