use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PolyError;
use crate::monomial::{Monomial, MonomialOrder};
use crate::multipoly::{MultiPoly, Rational};

/// Generators over a shared, ordered variable list (first variable is largest).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ideal {
    pub vars: Vec<String>,
    pub generators: Vec<MultiPoly>,
}

impl Ideal {
    /// Variables are collected in order of first appearance; zero generators are dropped.
    pub fn new(generators: Vec<MultiPoly>) -> Self {
        let mut vars: Vec<String> = Vec::new();
        for g in &generators {
            for v in g.used_vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        Ideal::with_vars(vars, generators)
    }

    /// Fix the variable priority explicitly. Variables used by a generator but
    /// missing from `vars` are appended.
    pub fn with_vars(mut vars: Vec<String>, generators: Vec<MultiPoly>) -> Self {
        for g in &generators {
            for v in g.used_vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        let arc: Arc<[String]> = Arc::from(vars.clone());
        let generators = generators.into_iter().filter(|g| !g.is_zero()).map(|g| g.with_vars(&arc)).collect();
        Ideal { vars, generators }
    }

    pub fn push(&mut self, g: MultiPoly) {
        if g.is_zero() {
            return;
        }
        for v in g.used_vars() {
            if !self.vars.contains(&v) {
                self.vars.push(v);
            }
        }
        let arc: Arc<[String]> = Arc::from(self.vars.clone());
        self.generators = self.generators.iter().map(|p| p.with_vars(&arc)).collect();
        self.generators.push(g.with_vars(&arc));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerConfig {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 1_000_000, max_degree: 60 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub pairs_pruned: usize,
    pub zero_reductions: usize,
}

/// Reduced Groebner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroebnerBasis {
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub basis: Vec<MultiPoly>,
    pub stats: GroebnerStats,
}

/// Terms in ascending order, so the leading term is last.
#[derive(Clone, Debug)]
struct Dense {
    terms: Vec<(Monomial, Rational)>,
}

impl Dense {
    fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Dense {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Dense { terms }
    }

    fn to_poly(&self, vars: &Arc<[String]>) -> MultiPoly {
        MultiPoly::from_terms(vars.clone(), self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero").1
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.lc().recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 = &t.1 * &inv;
        }
    }

    /// `self - c * m * g`, merging two ascending term lists.
    fn sub_mul(&self, c: &Rational, m: &Monomial, g: &Dense, order: MonomialOrder) -> Dense {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| g.terms[k].0.mul(m);
        let mut gm: Option<Monomial> = if g.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || j < g.terms.len() {
            let ord = match (self.terms.get(i), &gm) {
                (Some(a), Some(b)) => order.cmp(&a.0, b),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let mono = gm.take().expect("present");
                    out.push((mono, -(c * &g.terms[j].1)));
                    j += 1;
                    gm = if j < g.terms.len() { Some(shifted(j)) } else { None };
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - c * &g.terms[j].1;
                    if !v.is_zero() {
                        out.push((gm.take().expect("present"), v));
                    }
                    i += 1;
                    j += 1;
                    gm = if j < g.terms.len() { Some(shifted(j)) } else { None };
                }
            }
        }
        Dense { terms: out }
    }
}

/// Full reduction of `f` by the monic polynomials `basis[k]` for `k` in `active`.
fn reduce(f: Dense, basis: &[Dense], active: &[usize], order: MonomialOrder) -> Dense {
    let mut p = f;
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last().cloned() {
        let divisor = active.iter().copied().find(|&k| basis[k].lm().divides(&m));
        match divisor {
            Some(k) => {
                let g = &basis[k];
                let q = g.lm().quotient_of(&m);
                let coef = &c / g.lc();
                p = p.sub_mul(&coef, &q, g, order);
            }
            None => {
                rem.push((m, c));
                p.terms.pop();
            }
        }
    }
    rem.reverse();
    Dense { terms: rem }
}

fn s_poly(f: &Dense, g: &Dense, order: MonomialOrder) -> Dense {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    // f and g are monic
    let zero = Dense { terms: Vec::new() };
    let a = zero.sub_mul(&-Rational::one(), &mf, f, order);
    a.sub_mul(&Rational::one(), &mg, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn pair_cmp(a: &Pair, b: &Pair, order: MonomialOrder) -> Ordering {
    a.lcm
        .degree()
        .cmp(&b.lcm.degree())
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

/// Gebauer-Moeller installation of the new element `h`.
fn update(
    basis: &[Dense],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: usize,
    stats: &mut GroebnerStats,
) {
    let lh = basis[h].lm().clone();
    let mut c: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let lg = basis[g].lm();
            (g, lh.lcm(lg), lh.is_coprime(lg))
        })
        .collect();
    c.reverse();
    let mut d: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((g, l, coprime)) = c.pop() {
        let divided = c.iter().chain(d.iter()).any(|(_, l2, _)| l2.divides(&l));
        if coprime || !divided {
            d.push((g, l, coprime));
        } else {
            stats.pairs_pruned += 1;
        }
    }
    let new_pairs: Vec<Pair> = d
        .into_iter()
        .filter_map(|(g, l, coprime)| {
            if coprime {
                stats.pairs_pruned += 1;
                None
            } else {
                Some(Pair { i: g.min(h), j: g.max(h), lcm: l })
            }
        })
        .collect();

    // criterion B on old pairs
    let before = pairs.len();
    pairs.retain(|p| {
        let li = basis[p.i].lm().lcm(&lh);
        let lj = basis[p.j].lm().lcm(&lh);
        !(lh.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });
    stats.pairs_pruned += before - pairs.len();
    pairs.extend(new_pairs);

    active.retain(|&g| !lh.divides(basis[g].lm()));
    active.push(h);
}

/// Reduced Groebner basis of `ideal` under `order`, with the ideal's variable priority.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, config: &GroebnerConfig) -> Result<GroebnerBasis, PolyError> {
    let vars: Arc<[String]> = Arc::from(ideal.vars.clone());
    let mut stats = GroebnerStats::default();
    let mut basis: Vec<Dense> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let unit = |vars: &Arc<[String]>, stats: GroebnerStats| GroebnerBasis {
        vars: vars.to_vec(),
        order,
        basis: vec![MultiPoly::one().with_vars(vars)],
        stats,
    };

    let mut inputs: Vec<Dense> = ideal
        .generators
        .iter()
        .map(|g| Dense::from_poly(&g.with_vars(&vars), order))
        .filter(|d| !d.is_zero())
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then(a.terms.len().cmp(&b.terms.len())));

    for f in inputs {
        let mut r = reduce(f, &basis, &active, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return Ok(unit(&vars, stats));
        }
        basis.push(r);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h, &mut stats);
    }

    while !pairs.is_empty() {
        if stats.pairs_reduced >= config.max_pairs {
            return Err(PolyError::ResourceCap(format!("S-pair limit {} reached", config.max_pairs)));
        }
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| pair_cmp(a.1, b.1, order))
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        stats.pairs_reduced += 1;
        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let mut r = reduce(s, &basis, &active, order);
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return Ok(unit(&vars, stats));
        }
        let deg = r.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        if deg > config.max_degree {
            return Err(PolyError::ResourceCap(format!("basis element of degree {deg} exceeds cap {}", config.max_degree)));
        }
        basis.push(r);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h, &mut stats);
    }

    // minimal, then reduced
    let mut minimal: Vec<usize> = Vec::new();
    for &a in &active {
        let la = basis[a].lm();
        let redundant = active.iter().any(|&b| b != a && basis[b].lm().divides(la) && (basis[b].lm() != la || b < a));
        if !redundant {
            minimal.push(a);
        }
    }
    let mut reduced: Vec<Dense> = Vec::with_capacity(minimal.len());
    for &a in &minimal {
        let others: Vec<usize> = minimal.iter().copied().filter(|&b| b != a).collect();
        let g = &basis[a];
        let lead = g.terms.last().cloned().expect("nonzero");
        let tail = Dense { terms: g.terms[..g.terms.len() - 1].to_vec() };
        let mut t = reduce(tail, &basis, &others, order);
        t.terms.push(lead);
        t.make_monic();
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(GroebnerBasis {
        vars: vars.to_vec(),
        order,
        basis: reduced.iter().map(|d| d.to_poly(&vars)).collect(),
        stats,
    })
}

impl GroebnerBasis {
    fn arc_vars(&self) -> Arc<[String]> {
        Arc::from(self.vars.clone())
    }

    /// True iff the basis is `{1}`.
    pub fn contains_one(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(self.order).map(|(m, _)| m.clone()).expect("nonzero"))
            .collect()
    }

    /// Remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let mut vars = self.vars.clone();
        for v in f.used_vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let arc: Arc<[String]> = Arc::from(vars);
        let dense: Vec<Dense> = self.basis.iter().map(|g| Dense::from_poly(&g.with_vars(&arc), self.order)).collect();
        let active: Vec<usize> = (0..dense.len()).collect();
        let r = reduce(Dense::from_poly(&f.with_vars(&arc), self.order), &dense, &active, self.order);
        r.to_poly(&arc)
    }

    pub fn reduces_to_zero(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.contains_one() {
            return true;
        }
        let lms = self.leading_monomials();
        (0..self.vars.len()).all(|v| {
            lms.iter().any(|m| {
                let e = m.exponents();
                e[v] > 0 && e.iter().enumerate().all(|(k, &x)| k == v || x == 0)
            })
        })
    }

    /// Basis elements involving only the listed variables.
    pub fn elimination_part(&self, keep: &[String]) -> Vec<MultiPoly> {
        self.basis
            .iter()
            .filter(|g| g.used_vars().iter().all(|v| keep.contains(v)))
            .cloned()
            .collect()
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|g| g.to_string()).collect()
    }

    pub fn var_list(&self) -> Arc<[String]> {
        self.arc_vars()
    }
}

/// Radical membership `f ∈ √I` via the Rabinowitsch trick.
pub fn radical_contains(ideal: &Ideal, f: &MultiPoly, config: &GroebnerConfig) -> Result<bool, PolyError> {
    let mut t = String::from("rabinowitsch_t");
    while ideal.vars.contains(&t) {
        t.push('_');
    }
    let mut gens = ideal.generators.clone();
    gens.push(&MultiPoly::one() - &(&MultiPoly::var(&t) * f));
    let mut vars = ideal.vars.clone();
    vars.push(t);
    let ext = Ideal::with_vars(vars, gens);
    Ok(buchberger(&ext, MonomialOrder::GrevLex, config)?.contains_one())
}

/// Ideal membership `f ∈ I`.
pub fn ideal_contains(ideal: &Ideal, f: &MultiPoly, config: &GroebnerConfig) -> Result<bool, PolyError> {
    Ok(buchberger(ideal, MonomialOrder::GrevLex, config)?.reduces_to_zero(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn gb(gens: &[&str], vars: &[&str], order: MonomialOrder) -> GroebnerBasis {
        let ideal = Ideal::with_vars(vars.iter().map(|s| s.to_string()).collect(), gens.iter().map(|s| p(s)).collect());
        buchberger(&ideal, order, &GroebnerConfig::default()).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let g = gb(&["x", "y"], &["x", "y"], MonomialOrder::Lex);
        assert_eq!(g.basis, vec![p("y"), p("x")]);
    }

    #[test]
    fn common_factor_collapses() {
        let g = gb(&["x^2 - 1", "x - 1"], &["x"], MonomialOrder::GrevLex);
        assert_eq!(g.basis, vec![p("x - 1")]);
    }

    #[test]
    fn inconsistent_linear_system() {
        let g = gb(&["x + y", "x - y", "x + 1"], &["x", "y"], MonomialOrder::Lex);
        assert!(g.contains_one());
        let g = gb(&["a^2 - a + 1", "a - 2"], &["a"], MonomialOrder::Lex);
        assert!(g.contains_one());
        assert!(!gb(&["x - 1"], &["x"], MonomialOrder::Lex).contains_one());
    }

    #[test]
    fn lex_basis_of_twisted_cubic() {
        let g = gb(&["x^2 - y", "x^3 - z"], &["x", "y", "z"], MonomialOrder::Lex);
        let expected = vec![p("y^3 - z^2"), p("x*z - y^2"), p("x*y - z"), p("x^2 - y")];
        assert_eq!(g.basis, expected);
    }

    #[test]
    fn textbook_grevlex_example() {
        // Cox-Little-O'Shea: x^3 - 2xy, x^2 y - 2y^2 + x
        let g = gb(&["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], &["x", "y"], MonomialOrder::GrevLex);
        let expected = vec![p("y^2 - 1/2*x"), p("x*y"), p("x^2")];
        assert_eq!(g.basis, expected);
    }

    #[test]
    fn cap_is_reported() {
        let ideal = Ideal::new(vec![p("x^3 - 2*x*y"), p("x^2*y - 2*y^2 + x")]);
        let r = buchberger(&ideal, MonomialOrder::GrevLex, &GroebnerConfig { max_pairs: 1, max_degree: 60 });
        assert!(matches!(r, Err(PolyError::ResourceCap(_))));
    }

    #[test]
    fn radical_but_not_ideal_member() {
        let ideal = Ideal::new(vec![p("x^2")]);
        let cfg = GroebnerConfig::default();
        assert!(!ideal_contains(&ideal, &p("x"), &cfg).unwrap());
        assert!(radical_contains(&ideal, &p("x"), &cfg).unwrap());
    }

    #[test]
    fn zero_dimensional_detection() {
        assert!(gb(&["x^2 - 1", "y - x"], &["y", "x"], MonomialOrder::Lex).is_zero_dimensional());
        assert!(!gb(&["x*y"], &["x", "y"], MonomialOrder::Lex).is_zero_dimensional());
    }
}
