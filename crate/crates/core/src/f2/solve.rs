use std::collections::{BTreeMap, HashSet};

use ghostchar_poly::roots::{uni_roots_of, Root};
use ghostchar_poly::{
    buchberger, GroebnerBasis, GroebnerConfig, Ideal, Monomial, MonomialOrder, MultiPoly, PolyError, QuadNumber,
    Rational, UniPoly,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{FundamentalRelationSet, ReducedPresentation, SubstitutionChain};
use crate::error::F2Error;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolveConfig {
    pub groebner: GroebnerConfig,
    /// Scaled residual every reported point must meet on every polynomial.
    pub residual_bound: f64,
    /// Cap on candidate coordinate tuples examined during back-substitution.
    pub max_candidates: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { groebner: GroebnerConfig::default(), residual_bound: 1e-10, max_candidates: 2_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eliminant {
    pub var: String,
    /// Monic minimal polynomial of the variable modulo the ideal.
    pub poly: MultiPoly,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, Serialize)]
pub struct F2Point {
    pub coords: BTreeMap<String, Complex64>,
    pub exact: BTreeMap<String, QuadNumber>,
    /// Largest scaled residual over the polynomials of the reduced system.
    pub residual: f64,
    /// All coordinates exact and every polynomial vanishes identically.
    pub exact_verified: bool,
}

impl F2Point {
    pub fn value(&self, var: &str) -> Option<Complex64> {
        self.coords.get(var).copied()
    }

    fn exact_field(&self) -> Option<BigInt> {
        common_field(self.exact.values())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveMethod {
    pub unknowns: Vec<String>,
    pub groebner_size: usize,
    pub quotient_dimension: usize,
    pub eliminants: Vec<Eliminant>,
    pub candidates_examined: usize,
}

/// Distinct radicands among `vals`; `Some(0)` for all-rational, `None` when mixed.
fn common_field<'a>(vals: impl Iterator<Item = &'a QuadNumber>) -> Option<BigInt> {
    let ds: HashSet<BigInt> = vals.filter(|q| !q.is_rational()).map(|q| q.d.clone()).collect();
    match ds.len() {
        0 => Some(BigInt::zero()),
        1 => ds.into_iter().next(),
        _ => None,
    }
}

fn aligned_terms(p: &MultiPoly, vars: &std::sync::Arc<[String]>) -> BTreeMap<Monomial, Rational> {
    p.with_vars(vars).terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Minimal polynomial of `var` in `Q[vars]/I` from the linear dependency among normal forms of its powers.
fn minimal_polynomial(gb: &GroebnerBasis, var: &str, cap: usize) -> Result<UniPoly, PolyError> {
    let vars = gb.var_list();
    let x = MultiPoly::var(var);
    // reduced rows: (pivot, row, combination of powers)
    let mut rows: Vec<(Monomial, BTreeMap<Monomial, Rational>, Vec<Rational>)> = Vec::new();
    let mut power = MultiPoly::one();
    for k in 0..=cap {
        let mut row = aligned_terms(&gb.normal_form(&power), &vars);
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (piv, r, c) in &rows {
            let Some(f) = row.get(piv).cloned() else { continue };
            for (m, v) in r {
                let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(m);
                }
            }
            for (i, v) in c.iter().enumerate() {
                combo[i] -= &f * v;
            }
        }
        if row.is_empty() {
            return Ok(UniPoly::new(combo).monic());
        }
        let (piv, lead) = row.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).expect("nonempty");
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for v in combo.iter_mut() {
            *v *= &inv;
        }
        rows.push((piv, row, combo));
        power = &power * &x;
        power = gb.normal_form(&power);
    }
    Err(PolyError::PositiveDimensional)
}

fn quotient_dimension(gb: &GroebnerBasis) -> usize {
    let lms = gb.leading_monomials();
    let nv = gb.vars.len();
    // enumerate standard monomials breadth-first; finite when zero-dimensional
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack = vec![vec![0u32; nv]];
    while let Some(e) = stack.pop() {
        if !seen.insert(e.clone()) {
            continue;
        }
        for v in 0..nv {
            let mut f = e.clone();
            f[v] += 1;
            let mono = Monomial::from_exponents(f.clone());
            if !lms.iter().any(|l| l.divides(&mono)) && !seen.contains(&f) {
                stack.push(f);
            }
        }
    }
    seen.len()
}

fn scaled_poly_residual(p: &MultiPoly, coords: &BTreeMap<String, Complex64>) -> f64 {
    let look = |v: &str| coords.get(v).copied().unwrap_or(Complex64::new(f64::NAN, 0.0));
    let num = p.eval_complex_exact(look).norm();
    let s = p.eval_abs_scale(look);
    if s > 0.0 {
        num / s
    } else {
        num
    }
}

/// All points of a zero-dimensional reduced system, each verified against every polynomial.
pub fn solve_reduced(rp: &ReducedPresentation, cfg: &SolveConfig) -> Result<(Vec<F2Point>, SolveMethod), F2Error> {
    let unknowns = rp.unknowns();
    let polys = rp.all_polys();
    let ideal = Ideal::with_vars(unknowns.clone(), polys.clone());
    let gb = buchberger(&ideal, MonomialOrder::GrevLex, &cfg.groebner)?;
    if gb.contains_one() {
        let method = SolveMethod {
            unknowns,
            groebner_size: 1,
            quotient_dimension: 0,
            eliminants: vec![],
            candidates_examined: 0,
        };
        return Ok((vec![], method));
    }
    if !gb.is_zero_dimensional() {
        return Err(PolyError::PositiveDimensional.into());
    }
    let dim = quotient_dimension(&gb);

    let mut eliminants = Vec::new();
    for v in &unknowns {
        let mp = minimal_polynomial(&gb, v, dim)?;
        let sf = mp.square_free_part();
        let roots = if sf.degree().unwrap_or(0) == 0 { vec![] } else { uni_roots_of(&sf)?.roots };
        eliminants.push(Eliminant { var: v.clone(), poly: mp.to_multi(v), roots });
    }

    // polynomials usable for pruning, by the prefix of unknowns they need
    let checks: Vec<(usize, MultiPoly)> = polys
        .iter()
        .chain(gb.basis.iter())
        .map(|p| {
            let used = p.used_vars();
            let last = unknowns.iter().rposition(|u| used.contains(u)).unwrap_or(0);
            (last, p.clone())
        })
        .collect();

    let mut points = Vec::new();
    let mut examined = 0usize;
    let mut assign: Vec<usize> = Vec::with_capacity(unknowns.len());
    let k = unknowns.len();
    if k == 0 {
        return Err(F2Error::Verification("reduced system has no unknowns".into()));
    }
    fn coords_of(unknowns: &[String], elims: &[Eliminant], assign: &[usize]) -> BTreeMap<String, Complex64> {
        assign.iter().enumerate().map(|(i, &r)| (unknowns[i].clone(), elims[i].roots[r].value)).collect()
    }
    // iterative DFS over root indices
    let mut next = vec![0usize; k + 1];
    let mut depth = 0usize;
    loop {
        if depth == k {
            let coords = coords_of(&unknowns, &eliminants, &assign);
            let residual = polys.iter().map(|p| scaled_poly_residual(p, &coords)).fold(0.0, f64::max);
            if residual <= cfg.residual_bound {
                let exact: BTreeMap<String, QuadNumber> = assign
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &r)| eliminants[i].roots[r].exact.clone().map(|q| (unknowns[i].clone(), q)))
                    .collect();
                let mut pt = F2Point { coords, exact, residual, exact_verified: false };
                pt.exact_verified = verify_exact(&pt, &polys, k);
                points.push(pt);
            }
            depth -= 1;
            assign.pop();
            continue;
        }
        if next[depth] >= eliminants[depth].roots.len() {
            if depth == 0 {
                break;
            }
            next[depth] = 0;
            depth -= 1;
            assign.pop();
            continue;
        }
        let r = next[depth];
        next[depth] += 1;
        examined += 1;
        if examined > cfg.max_candidates {
            return Err(PolyError::ResourceCap(format!("more than {} candidate tuples", cfg.max_candidates)).into());
        }
        assign.push(r);
        let coords = coords_of(&unknowns, &eliminants, &assign);
        let ok = checks
            .iter()
            .filter(|(last, _)| *last == depth)
            .all(|(_, p)| scaled_poly_residual(p, &coords) <= 1e-6);
        if ok {
            depth += 1;
            next[depth] = 0;
        } else {
            assign.pop();
        }
    }
    if points.len() > dim {
        return Err(F2Error::Verification(format!("{} points exceed quotient dimension {dim}", points.len())));
    }
    let method = SolveMethod {
        unknowns,
        groebner_size: gb.basis.len(),
        quotient_dimension: dim,
        eliminants,
        candidates_examined: examined,
    };
    Ok((points, method))
}

fn verify_exact(pt: &F2Point, polys: &[MultiPoly], k: usize) -> bool {
    if pt.exact.len() != k || pt.exact_field().is_none() {
        return false;
    }
    polys.iter().all(|p| {
        p.eval(|v| pt.exact.get(v).cloned().unwrap_or_else(|| QuadNumber::rational(Rational::zero())))
            .is_zero()
    })
}

/// All `x_pq`, `1 ≤ p, q ≤ n`, with `x_pp = 2`.
#[derive(Clone, Debug, Serialize)]
pub struct FullCoords {
    pub n: usize,
    values: Vec<Complex64>,
    exact: Option<Vec<QuadNumber>>,
    /// Largest fundamental-relation residual at this point.
    pub residual: f64,
}

impl FullCoords {
    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        self.values[(p - 1) * self.n + (q - 1)]
    }

    pub fn get_exact(&self, p: usize, q: usize) -> Option<&QuadNumber> {
        self.exact.as_ref().map(|e| &e[(p - 1) * self.n + (q - 1)])
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Upper-triangular entries `((p, q), x_pq)` with `p < q`.
    pub fn pairs(&self) -> Vec<((usize, usize), Complex64)> {
        let mut out = Vec::new();
        for p in 1..=self.n {
            for q in p + 1..=self.n {
                out.push(((p, q), self.get(p, q)));
            }
        }
        out
    }
}

/// Table over labels with the closure recursion replayed in increasing label order.
fn fill<T: Clone>(
    n: usize,
    m: usize,
    producers: &[(usize, usize)],
    seed: impl Fn(usize, usize) -> T,
    two: T,
    step: impl Fn(&T, &T, &T) -> T,
) -> Vec<T> {
    let mut t = vec![two.clone(); n * n];
    for p in 1..=m {
        for q in p + 1..=m {
            let v = seed(p, q);
            t[(p - 1) * n + q - 1] = v.clone();
            t[(q - 1) * n + p - 1] = v;
        }
    }
    for k in m + 1..=n {
        let (i, j) = producers[k - m - 1];
        for a in 1..k {
            let v = step(&t[(i - 1) * n + j - 1], &t[(a - 1) * n + i - 1], &t[(a - 1) * n + j - 1]);
            t[(a - 1) * n + k - 1] = v.clone();
            t[(k - 1) * n + a - 1] = v;
        }
    }
    t
}

/// Extend a reduced point to every arc pair and check all fundamental relations.
pub fn lift_point(
    pt: &F2Point,
    rp: &ReducedPresentation,
    chain: &SubstitutionChain,
    rels: &FundamentalRelationSet,
    tol: f64,
) -> Result<FullCoords, F2Error> {
    let (n, m) = (chain.n, chain.m);
    let rep = |p: usize, q: usize| rp.representative(&super::pair_symbol(p, q));
    for p in 1..=m {
        for q in p + 1..=m {
            if !pt.coords.contains_key(&rep(p, q)) {
                return Err(F2Error::Verification(format!("point lacks coordinate {}", rep(p, q))));
            }
        }
    }
    let values = fill(
        n,
        m,
        &chain.producers,
        |p, q| pt.coords[&rep(p, q)],
        Complex64::new(2.0, 0.0),
        |xij, xai, xaj| xij * xai - xaj,
    );
    let exact_ok = (1..=m).all(|p| (p + 1..=m).all(|q| pt.exact.contains_key(&rep(p, q)))) && pt.exact_field().is_some();
    let exact = exact_ok.then(|| {
        fill(
            n,
            m,
            &chain.producers,
            |p, q| pt.exact[&rep(p, q)].clone(),
            QuadNumber::rational(Rational::from_integer(BigInt::from(2))),
            |xij, xai, xaj| xij.mul(xai).sub(xaj),
        )
    });
    let mut full = FullCoords { n, values, exact, residual: 0.0 };
    let (res, at) = rels.max_residual(&full);
    full.residual = res;
    if !(res <= tol) {
        return Err(F2Error::LiftResidual { residual: res, relation: at });
    }
    Ok(full)
}
