//! Numeric roots of rational univariate polynomials.
//!
//! Square-free factors from Yun's decomposition are solved with Aberth's
//! simultaneous iteration. Factors of degree at most two over the rationals are
//! recovered exactly when the numeric roots allow it.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::error::PolyError;
use crate::multipoly::{MultiPoly, Rational};
use crate::quadratic::QuadNumber;
use crate::univariate::UniPoly;

pub const DEFAULT_RESIDUAL_BOUND: f64 = 1e-10;
const MAX_ITER: usize = 2000;

#[derive(Clone, Debug, Serialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: u32,
    /// Exact value when the root lies in a quadratic (or rational) extension found here.
    pub exact: Option<QuadNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexRootSet {
    pub roots: Vec<Root>,
    pub residual_bound: f64,
    pub max_residual: f64,
}

impl ComplexRootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.value).collect()
    }
}

/// |f(z)| / Σ|c_k||z|^k, with the numerator evaluated exactly at the rounded input.
pub fn scaled_residual(f: &UniPoly, z: Complex64) -> f64 {
    let v = f.to_multi("z").eval_complex_exact(|_| z).norm();
    let s = f.abs_scale(z);
    if s == 0.0 {
        v
    } else {
        v / s
    }
}

fn aberth(f: &UniPoly) -> Result<Vec<Complex64>, PolyError> {
    let n = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Ok(vec![]);
    }
    let c = f.monic().coeffs_f64();
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0], 0.0)]);
    }
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        (p, dp)
    };
    // initial points on a circle of radius ~ geometric mean of the root moduli
    let radius = c[0].abs().powf(1.0 / n as f64).max(1e-3).min(f.root_bound());
    let center = -c[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    sum += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 1e-15 * z[i].norm().max(1e-15) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    // Newton polish on the monic factor
    for zi in &mut z {
        for _ in 0..4 {
            let (p, dp) = eval(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
            if step.norm() <= 1e-17 * zi.norm() {
                break;
            }
        }
    }
    let worst = z.iter().map(|&zi| scaled_residual(f, zi)).fold(0.0, f64::max);
    if !worst.is_finite() || worst > DEFAULT_RESIDUAL_BOUND {
        return Err(PolyError::NoConvergence { iterations: MAX_ITER, residual: worst });
    }
    Ok(z)
}

/// Best rational approximation with denominator at most `max_den`.
pub fn rational_approx(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-13 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Exact factors of degree ≤ 2 of a square-free `f`, found from its numeric roots.
/// Returns the factors and the leftover cofactor.
pub fn small_exact_factors(f: &UniPoly, roots: &[Complex64]) -> (Vec<UniPoly>, UniPoly) {
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let mut remaining: Vec<Complex64> = roots.to_vec();

    let try_divide = |rest: &UniPoly, g: &UniPoly| -> Option<UniPoly> {
        let (q, r) = rest.div_rem(g).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    };

    // rational roots
    let mut k = 0;
    while k < remaining.len() {
        let z = remaining[k];
        if z.im.abs() <= 1e-9 * (1.0 + z.re.abs()) {
            if let Some(q) = rational_approx(z.re, 1_000_000) {
                let g = UniPoly::new(vec![-q.clone(), Rational::one()]);
                if let Some(quot) = try_divide(&rest, &g) {
                    rest = quot;
                    factors.push(g);
                    remaining.remove(k);
                    continue;
                }
            }
        }
        k += 1;
    }

    // quadratic factors from pairs
    let mut i = 0;
    while i < remaining.len() {
        let mut matched = None;
        for j in (i + 1)..remaining.len() {
            let s = remaining[i] + remaining[j];
            let p = remaining[i] * remaining[j];
            if s.im.abs() > 1e-8 * (1.0 + s.norm()) || p.im.abs() > 1e-8 * (1.0 + p.norm()) {
                continue;
            }
            let (Some(sq), Some(pq)) = (rational_approx(s.re, 1_000_000), rational_approx(p.re, 1_000_000)) else {
                continue;
            };
            let g = UniPoly::new(vec![pq, -sq, Rational::one()]);
            if let Some(quot) = try_divide(&rest, &g) {
                rest = quot;
                factors.push(g);
                matched = Some(j);
                break;
            }
        }
        match matched {
            Some(j) => {
                remaining.remove(j);
                remaining.remove(i);
            }
            None => i += 1,
        }
    }
    (factors, rest)
}

/// Exact roots of a factor of degree 1 or 2.
pub fn exact_roots_small(g: &UniPoly) -> Vec<QuadNumber> {
    let c = g.coeffs();
    match g.degree() {
        Some(1) => vec![QuadNumber::rational(-&c[0] / &c[1])],
        Some(2) => QuadNumber::quadratic_roots(&c[2], &c[1], &c[0]).to_vec(),
        _ => vec![],
    }
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    let key = |z: &Complex64| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64);
    key(a).cmp(&key(b)).then(a.re.total_cmp(&b.re)).then(a.im.total_cmp(&b.im))
}

/// All complex roots with multiplicities of a univariate rational polynomial.
pub fn uni_roots(p: &MultiPoly) -> Result<ComplexRootSet, PolyError> {
    let (var, f) = UniPoly::from_multi(p)?;
    if f.degree().unwrap_or(0) == 0 {
        return Err(PolyError::ConstantInVariable(var.unwrap_or_default()));
    }
    uni_roots_of(&f)
}

pub fn uni_roots_of(f: &UniPoly) -> Result<ComplexRootSet, PolyError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(PolyError::ConstantInVariable(String::new()));
    }
    let mut roots: Vec<Root> = Vec::new();
    let mut worst: f64 = 0.0;
    for (factor, mult) in f.square_free_decomposition() {
        let numeric = aberth(&factor)?;
        let (small, _) = small_exact_factors(&factor, &numeric);
        let exact: Vec<QuadNumber> = small.iter().flat_map(exact_roots_small).collect();
        let mut used = vec![false; exact.len()];
        for z in numeric {
            worst = worst.max(scaled_residual(&factor, z));
            let mut best: Option<(usize, f64)> = None;
            for (k, e) in exact.iter().enumerate() {
                if used[k] {
                    continue;
                }
                let d = (e.to_complex() - z).norm();
                if d <= 1e-7 * (1.0 + z.norm()) && best.map(|b| d < b.1).unwrap_or(true) {
                    best = Some((k, d));
                }
            }
            let (value, ex) = match best {
                Some((k, _)) => {
                    used[k] = true;
                    (exact[k].to_complex(), Some(exact[k].clone()))
                }
                None => (z, None),
            };
            roots.push(Root { value, multiplicity: mult, exact: ex });
        }
    }
    roots.sort_by(|a, b| cmp_complex(&a.value, &b.value));
    Ok(ComplexRootSet { roots, residual_bound: DEFAULT_RESIDUAL_BOUND, max_residual: worst })
}

pub fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol * (1.0 + z.re.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn golden_quadratic_roots() {
        let r = uni_roots(&p("z^2 - 5*z + 5")).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0].value.re - 1.381_966_011_3).abs() < 1e-10);
        assert!((r.roots[1].value.re - 3.618_033_988_7).abs() < 1e-10);
        assert!(r.roots.iter().all(|x| x.exact.is_some()));
    }

    #[test]
    fn imaginary_unit() {
        let r = uni_roots(&p("z^2 + 1")).unwrap();
        let v = r.values();
        assert!((v[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((v[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn repeated_root() {
        let r = uni_roots(&p("(z - 1)^2")).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 2);
        assert_eq!(r.total_multiplicity(), 2);
        assert_eq!(r.roots[0].exact, Some(QuadNumber::rational(Rational::one())));
    }

    #[test]
    fn degree_ten_with_mixed_factors() {
        // (a-2)(a-1)a(a+2)(a^2-5a+5)(a^2-a-1)(a^2+a-1)
        let f = p("(a-2)*(a-1)*a*(a+2)*(a^2-5*a+5)*(a^2-a-1)*(a^2+a-1)");
        let r = uni_roots(&f).unwrap();
        assert_eq!(r.roots.len(), 10);
        assert!(r.roots.iter().all(|x| x.exact.is_some()));
        assert!(r.max_residual <= r.residual_bound);
    }

    #[test]
    fn constant_is_rejected() {
        assert!(uni_roots(&p("3")).is_err());
    }
}
