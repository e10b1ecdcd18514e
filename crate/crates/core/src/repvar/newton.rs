//! Damped Gauss–Newton search for numeric solutions of a polynomial system.

use ghostchar_poly::MultiPoly;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

type Term = (Complex64, Vec<u32>);

/// Polynomials flattened to coefficient/exponent lists over a fixed variable order.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    pub vars: Vec<String>,
    polys: Vec<Vec<Term>>,
}

impl CompiledSystem {
    pub fn new(polys: &[MultiPoly], vars: &[String]) -> Self {
        let compiled = polys
            .iter()
            .map(|p| {
                let idx: Vec<usize> = p
                    .vars()
                    .iter()
                    .map(|v| vars.iter().position(|w| w == v).unwrap_or(usize::MAX))
                    .collect();
                p.terms()
                    .map(|(m, c)| {
                        let mut e = vec![0u32; vars.len()];
                        for (k, &x) in m.exponents().iter().enumerate() {
                            if x > 0 {
                                assert!(idx[k] != usize::MAX, "variable {} not in system", p.vars()[k]);
                                e[idx[k]] = x;
                            }
                        }
                        (Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0), e)
                    })
                    .collect()
            })
            .collect();
        CompiledSystem { vars: vars.to_vec(), polys: compiled }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.polys
            .iter()
            .map(|p| p.iter().map(|(c, e)| c * monomial(x, e, None)).sum())
            .collect()
    }

    /// Rows per polynomial, columns per variable.
    pub fn jacobian(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.polys
            .iter()
            .map(|p| {
                (0..x.len())
                    .map(|v| {
                        p.iter()
                            .filter(|(_, e)| e[v] > 0)
                            .map(|(c, e)| c * (e[v] as f64) * monomial(x, e, Some(v)))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.eval(x).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `x^e`, with the exponent of `skip` lowered by one.
fn monomial(x: &[Complex64], e: &[u32], skip: Option<usize>) -> Complex64 {
    let mut r = Complex64::new(1.0, 0.0);
    for (i, &k) in e.iter().enumerate() {
        let k = if Some(i) == skip { k - 1 } else { k };
        if k > 0 {
            r *= x[i].powu(k);
        }
    }
    r
}

/// Solve the square system `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))?;
        if a[p][k].norm() < 1e-300 {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
            let v = b[k];
            b[i] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NewtonConfig {
    pub starts: usize,
    pub iterations: usize,
    /// Start coordinates are uniform in `[-box, box]` for real and imaginary parts.
    pub start_box: f64,
    pub seed: u64,
    /// A start counts as a solution below this residual.
    pub accept: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig { starts: 1000, iterations: 200, start_box: 2.0, seed: 0x5eed, accept: 1e-6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonOutcome {
    pub starts: usize,
    pub solutions: usize,
    pub best_residual: f64,
    /// Best point found, in variable order.
    pub best_point: Vec<Complex64>,
}

fn descend(sys: &CompiledSystem, mut x: Vec<Complex64>, iterations: usize, accept: f64) -> (f64, Vec<Complex64>) {
    let n = x.len();
    let mut f = sys.eval(&x);
    let norm2 = |f: &[Complex64]| f.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut cost = norm2(&f);
    let mut mu = 1e-3;
    for _ in 0..iterations {
        if cost.sqrt() < accept * 1e-4 {
            break;
        }
        let j = sys.jacobian(&x);
        // (JᴴJ + μ I) δ = −Jᴴ f
        let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut g = vec![Complex64::new(0.0, 0.0); n];
        for (row, fi) in j.iter().zip(&f) {
            for p in 0..n {
                let cp = row[p].conj();
                g[p] -= cp * fi;
                for q in 0..n {
                    a[p][q] += cp * row[q];
                }
            }
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut damped = a.clone();
            for (p, r) in damped.iter_mut().enumerate() {
                r[p] += mu;
            }
            let Some(delta) = solve_linear(damped, g.clone()) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<Complex64> = x.iter().zip(&delta).map(|(a, d)| a + d).collect();
            let ft = sys.eval(&trial);
            let ct = norm2(&ft);
            if ct.is_finite() && ct < cost {
                x = trial;
                f = ft;
                cost = ct;
                mu = (mu * 0.3).max(1e-12);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (sys.residual(&x), x)
}

/// Run damped Newton from `cfg.starts` seeded random starts and count those converging.
pub fn newton_search(sys: &CompiledSystem, cfg: &NewtonConfig) -> NewtonOutcome {
    let n = sys.vars.len();
    let runs: Vec<(f64, Vec<Complex64>)> = (0..cfg.starts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let x0: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-cfg.start_box..cfg.start_box), rng.gen_range(-cfg.start_box..cfg.start_box)))
                .collect();
            descend(sys, x0, cfg.iterations, cfg.accept)
        })
        .collect();
    let solutions = runs.iter().filter(|(r, _)| *r < cfg.accept).count();
    let best = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap_or((f64::INFINITY, vec![]));
    NewtonOutcome { starts: cfg.starts, solutions, best_residual: best.0, best_point: best.1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_roots_of_a_consistent_system() {
        let polys: Vec<MultiPoly> = ["x^2 + y^2 - 5", "x*y - 2"].iter().map(|s| s.parse().unwrap()).collect();
        let sys = CompiledSystem::new(&polys, &["x".into(), "y".into()]);
        let out = newton_search(&sys, &NewtonConfig { starts: 20, ..Default::default() });
        assert!(out.solutions > 0);
        assert!(out.best_residual < 1e-10);
    }

    #[test]
    fn finds_nothing_for_an_inconsistent_system() {
        let polys: Vec<MultiPoly> = ["x*y - 1", "x*y - 2"].iter().map(|s| s.parse().unwrap()).collect();
        let sys = CompiledSystem::new(&polys, &["x".into(), "y".into()]);
        let out = newton_search(&sys, &NewtonConfig { starts: 50, ..Default::default() });
        assert_eq!(out.solutions, 0);
        assert!(out.best_residual > 0.4);
    }
}
