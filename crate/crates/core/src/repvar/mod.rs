//! Pairwise-trace constraint systems for SL(2,C) images of `x_p = m_1 m_p` in
//! the branched cover group, with Gröbner emptiness certificates.

mod newton;
mod witness;

use std::collections::{BTreeMap, HashMap};

use ghostchar_poly::{
    buchberger, radical_contains, GroebnerConfig, Ideal, MonomialOrder, MultiPoly, QuadNumber, Rational,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::GroupPresentation;
use crate::error::RepError;
use crate::f2::{pair_symbol, F2Point, ReducedPresentation};
use crate::mat2::Mat2;

pub use newton::{newton_search, CompiledSystem, NewtonConfig, NewtonOutcome};
pub use witness::{
    printed_t56_witness, preimage_report, t56_parabolic_witness, seed_targets, verify_witness, PreimageContext, PreimageVerdict, RepWitness,
    TraceCheck,
};

/// Seed pair traces `x_pq`, `1 ≤ p < q ≤ m`, from a reduced point with exact coordinates.
pub fn exact_seed_targets(pt: &F2Point, rp: &ReducedPresentation) -> Result<BTreeMap<(usize, usize), QuadNumber>, RepError> {
    let mut out = BTreeMap::new();
    for p in 1..=rp.m {
        for q in p + 1..=rp.m {
            let rep = rp.representative(&pair_symbol(p, q));
            let v = pt.exact.get(&rep).ok_or_else(|| RepError::NonAlgebraicTarget(rep.clone()))?;
            out.insert((p, q), v.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedPoly {
    pub name: String,
    /// Generators `X_p` the constraint mentions.
    pub involves: Vec<usize>,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCase {
    pub name: String,
    pub vars: Vec<String>,
    pub constraints: Vec<NamedPoly>,
}

impl TraceCase {
    pub fn ideal(&self) -> Ideal {
        Ideal::with_vars(self.vars.clone(), self.constraints.iter().map(|c| c.poly.clone()).collect())
    }

    /// Ideal of the constraints mentioning only generators in `subset`.
    pub fn sub_ideal(&self, subset: &[usize]) -> Ideal {
        let gens: Vec<MultiPoly> = self
            .constraints
            .iter()
            .filter(|c| c.involves.iter().all(|p| subset.contains(p)))
            .map(|c| c.poly.clone())
            .collect();
        let mut vars: Vec<String> = Vec::new();
        for v in &self.vars {
            if gens.iter().any(|g| g.var_index(v).is_some() && g.degree_in(v) > 0) {
                vars.push(v.clone());
            }
        }
        Ideal::with_vars(vars, gens)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceSystem {
    pub m: usize,
    /// Target values keyed by `x{p}_{q}`.
    pub targets: BTreeMap<String, QuadNumber>,
    /// Generator modelled as `diag(lam, t − lam)`.
    pub normalization: Option<usize>,
    /// Symbol and radicand adjoined for irrational targets.
    pub radical: Option<(String, BigInt)>,
    /// Entry polynomials of `X_2..X_m`.
    pub generator_entries: Vec<[[MultiPoly; 2]; 2]>,
    pub cases: Vec<TraceCase>,
}

impl TraceSystem {
    /// Numeric `X_2..X_m` at an assignment of the case variables.
    pub fn matrices_at(&self, value: impl Fn(&str) -> Complex64) -> Vec<Mat2> {
        self.generator_entries
            .iter()
            .map(|e| {
                let v = |p: &MultiPoly| p.eval::<Complex64>(|s| value(s));
                Mat2::new(v(&e[0][0]), v(&e[0][1]), v(&e[1][0]), v(&e[1][1]))
            })
            .collect()
    }
}

/// Entry symbols of `X_q`: `[[a_q, b_q], [c_q, t_q − a_q]]`, or the diagonal model.
fn generator_matrix(q: usize, trace: &MultiPoly, normalized: bool) -> [[MultiPoly; 2]; 2] {
    if normalized {
        let lam = MultiPoly::var("lam");
        return [[lam.clone(), MultiPoly::zero()], [MultiPoly::zero(), trace - &lam]];
    }
    let a = MultiPoly::var(&format!("a{q}"));
    let b = MultiPoly::var(&format!("b{q}"));
    let c = MultiPoly::var(&format!("c{q}"));
    [[a.clone(), b], [c, trace - &a]]
}

fn det2(m: &[[MultiPoly; 2]; 2]) -> MultiPoly {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

/// `tr(adj(P) Q)`, equal to `tr(P⁻¹ Q)` when `det P = 1`.
fn tr_adj_mul(p: &[[MultiPoly; 2]; 2], q: &[[MultiPoly; 2]; 2]) -> MultiPoly {
    let t1 = &p[1][1] * &q[0][0];
    let t2 = &p[0][1] * &q[1][0];
    let t3 = &p[1][0] * &q[0][1];
    let t4 = &p[0][0] * &q[1][1];
    &(&(&t1 - &t2) - &t3) + &t4
}

fn is_pm_two(q: &QuadNumber) -> bool {
    q.is_rational() && (q.a == Rational::from_integer(2.into()) || q.a == Rational::from_integer((-2).into()))
}

/// Constraint ideal for `X_2..X_m` with `tr X_p = x_1p`, `det X_p = 1`, `tr(X_p⁻¹ X_q) = x_pq`.
///
/// The first `X_p` whose trace target is not `±2` is diagonalized; the trace
/// conditions are solved linearly for the second diagonal entries.
pub fn build_trace_system(targets: &BTreeMap<(usize, usize), QuadNumber>, m: usize) -> Result<TraceSystem, RepError> {
    let mut radicand: Option<BigInt> = None;
    for v in targets.values() {
        if !v.is_rational() {
            match &radicand {
                None => radicand = Some(v.d.clone()),
                Some(d) if *d == v.d => {}
                Some(_) => return Err(RepError::NonAlgebraicTarget(v.to_string())),
            }
        }
    }
    let sym = "s".to_string();
    let as_poly = |q: &QuadNumber| -> MultiPoly {
        let mut p = MultiPoly::constant(q.a.clone());
        if !q.b.is_zero() {
            p = &p + &MultiPoly::var(&sym).scale(&q.b);
        }
        p
    };
    let target = |p: usize, q: usize| -> Result<MultiPoly, RepError> {
        targets.get(&(p, q)).map(as_poly).ok_or(RepError::MissingCoordinate(p, q))
    };
    let normalization = (2..=m).find(|&p| targets.get(&(1, p)).map(|t| !is_pm_two(t)).unwrap_or(false));

    let mut vars: Vec<String> = Vec::new();
    if radicand.is_some() {
        vars.push(sym.clone());
    }
    if normalization.is_some() {
        vars.push("lam".into());
    }
    let mut order: Vec<usize> = normalization.into_iter().collect();
    order.extend((2..=m).filter(|p| Some(*p) != normalization));
    let mut mats: HashMap<usize, [[MultiPoly; 2]; 2]> = HashMap::new();
    for &q in &order {
        let normalized = Some(q) == normalization;
        if !normalized {
            vars.extend(["a", "b", "c"].iter().map(|s| format!("{s}{q}")));
        }
        mats.insert(q, generator_matrix(q, &target(1, q)?, normalized));
    }

    let mut constraints = Vec::new();
    if let Some(d) = &radicand {
        constraints.push(NamedPoly {
            name: format!("{sym}^2 = {d}"),
            involves: vec![],
            poly: &MultiPoly::var(&sym).pow(2) - &MultiPoly::constant(Rational::from_integer(d.clone())),
        });
    }
    for &q in &order {
        constraints.push(NamedPoly {
            name: format!("det X{q} = 1"),
            involves: vec![q],
            poly: &det2(&mats[&q]) - &MultiPoly::one(),
        });
    }
    for p in 2..=m {
        for q in p + 1..=m {
            constraints.push(NamedPoly {
                name: format!("tr X{p}^-1 X{q} = x{p}_{q}"),
                involves: vec![p, q],
                poly: &tr_adj_mul(&mats[&p], &mats[&q]) - &target(p, q)?,
            });
        }
    }
    let base = match normalization {
        Some(p) => format!("X{p} diagonal"),
        None => "no normalization".into(),
    };
    let mut cases = vec![TraceCase { name: base, vars, constraints }];
    if normalization.is_some() {
        for &q in &order[1..] {
            let t = &targets[&(1, q)];
            if !is_pm_two(t) {
                continue;
            }
            cases = cases.into_iter().flat_map(|c| degenerate_split(c, q, t)).collect();
        }
    }
    Ok(TraceSystem {
        m,
        targets: targets.iter().map(|(&(p, q), v)| (pair_symbol(p, q), v.clone())).collect(),
        normalization,
        radical: radicand.map(|d| (sym, d)),
        generator_entries: (2..=m).map(|q| mats[&q].clone()).collect(),
        cases,
    })
}

/// Split on `X_q` with trace `±2`: scalar `±I`, or parabolic with `b_q ≠ 0` or `c_q ≠ 0`.
fn degenerate_split(case: TraceCase, q: usize, t: &QuadNumber) -> Vec<TraceCase> {
    let half = MultiPoly::constant(t.a.clone() / Rational::from_integer(2.into()));
    let a = MultiPoly::var(&format!("a{q}"));
    let b = MultiPoly::var(&format!("b{q}"));
    let c = MultiPoly::var(&format!("c{q}"));
    let scalar_name = if t.a.is_positive() { "I" } else { "-I" };
    let mut scalar = case.clone();
    scalar.name = format!("{}; X{q} = {scalar_name}", case.name);
    for (name, poly) in [(format!("a{q} = {half}"), &a - &half), (format!("b{q} = 0"), b.clone()), (format!("c{q} = 0"), c.clone())] {
        scalar.constraints.push(NamedPoly { name, involves: vec![q], poly });
    }
    let mut out = vec![scalar];
    for (entry, poly) in [("b", b), ("c", c)] {
        let u = format!("u{q}");
        let mut k = case.clone();
        k.name = format!("{}; X{q} parabolic, {entry}{q} != 0", case.name);
        k.vars.push(u.clone());
        k.constraints.push(NamedPoly {
            name: format!("{u}*{entry}{q} = 1"),
            involves: vec![q],
            poly: &(&MultiPoly::var(&u) * &poly) - &MultiPoly::one(),
        });
        out.push(k);
    }
    out
}

type SymMat = [[MultiPoly; 2]; 2];

fn sym_mul(a: &SymMat, b: &SymMat) -> SymMat {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn sym_adj(a: &SymMat) -> SymMat {
    [[a[1][1].clone(), -&a[0][1]], [-&a[1][0], a[0][0].clone()]]
}

/// Entries of `ρ(r) − I` for every cover relator `r`, inverses by adjugate.
pub fn relator_constraints(ts: &TraceSystem, cover: &GroupPresentation) -> Vec<NamedPoly> {
    let one = MultiPoly::one();
    let zero = MultiPoly::zero();
    let id: SymMat = [[one.clone(), zero.clone()], [zero, one.clone()]];
    let mut out = Vec::new();
    for (i, r) in cover.relators.iter().enumerate() {
        let mut acc = id.clone();
        let mut involves: Vec<usize> = Vec::new();
        for &(g, e) in &r.letters {
            let x = &ts.generator_entries[g];
            acc = sym_mul(&acc, &if e < 0 { sym_adj(x) } else { x.clone() });
            if !involves.contains(&(g + 2)) {
                involves.push(g + 2);
            }
        }
        involves.sort_unstable();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let poly = &acc[a][b] - &id[a][b];
            if !poly.is_zero() {
                out.push(NamedPoly { name: format!("relator {} entry ({a},{b})", i + 1), involves: involves.clone(), poly });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseBasis {
    pub normalization: String,
    pub basis: Vec<String>,
    pub contains_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmptinessCertificate {
    pub cases: Vec<CaseBasis>,
    pub empty: bool,
}

/// Reduced Gröbner basis of every case; empty when each is `{1}`.
pub fn emptiness_check(ts: &TraceSystem, cfg: &GroebnerConfig) -> Result<EmptinessCertificate, RepError> {
    let bases: Vec<Result<CaseBasis, RepError>> = ts
        .cases
        .par_iter()
        .map(|c| {
            let gb = buchberger(&c.ideal(), MonomialOrder::GrevLex, cfg)?;
            Ok(CaseBasis { normalization: c.name.clone(), basis: gb.basis_strings(), contains_one: gb.contains_one() })
        })
        .collect();
    let cases = bases.into_iter().collect::<Result<Vec<_>, _>>()?;
    let empty = cases.iter().all(|c| c.contains_one);
    Ok(EmptinessCertificate { cases, empty })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Ideal,
    Radical,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationStep {
    /// The implied polynomial in single-letter entry names.
    pub statement: String,
    pub poly: MultiPoly,
    /// Generators whose constraints form the stage ideal; empty for an explicit ideal.
    pub generators: Vec<usize>,
    pub membership: Membership,
    /// Stage ideal does not contain 1, so membership is not vacuous.
    pub stage_consistent: bool,
    pub holds: bool,
}

/// Letter names `a; b c d; f g h; j k l` for `lam; X3; X4; X5` (second diagonal entries eliminated).
pub fn letter_names() -> HashMap<String, String> {
    [
        ("a", "lam"),
        ("b", "a3"),
        ("c", "b3"),
        ("d", "c3"),
        ("f", "a4"),
        ("g", "b4"),
        ("h", "c4"),
        ("j", "a5"),
        ("k", "b5"),
        ("l", "c5"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

fn letters(s: &str) -> MultiPoly {
    s.parse::<MultiPoly>().expect("fixture").rename(&letter_names())
}

/// Staged consequences of the trace system for a point normalized on `X_2` with five seed meridians.
///
/// Each polynomial is tested against the ideal of the constraints among the
/// listed generators, so every stage ideal short of the last is consistent.
pub fn derivation_trace(ts: &TraceSystem, cfg: &GroebnerConfig) -> Result<Vec<DerivationStep>, RepError> {
    let case = &ts.cases[0];
    if ts.normalization != Some(2) || ts.m != 5 {
        return Ok(vec![]);
    }
    let staged: [(&str, &[usize]); 11] = [
        ("3*b - a - 1", &[2, 3]),
        ("3*b^2 - 3*b + 1", &[2, 3]),
        ("c*d + 2/3", &[2, 3]),
        ("g*h + 2/3", &[2, 4]),
        ("k*l + 2/3", &[2, 5]),
        ("c*h + d*g + 1/3", &[2, 3, 4]),
        ("c*l + d*k + 1/3", &[2, 3, 5]),
        ("g*l + h*k + 1/3", &[2, 4, 5]),
        ("2*g^2 - c*g + 2*c^2", &[2, 3, 4]),
        ("2*k^2 - c*k + 2*c^2", &[2, 3, 5]),
        ("2*k^2 - g*k + 2*g^2", &[2, 4, 5]),
    ];
    let mut steps: Vec<DerivationStep> = staged
        .par_iter()
        .map(|(text, subset)| -> Result<DerivationStep, RepError> {
            let ideal = case.sub_ideal(subset);
            let gb = buchberger(&ideal, MonomialOrder::GrevLex, cfg)?;
            let poly = letters(text);
            Ok(DerivationStep {
                statement: text.to_string(),
                holds: gb.reduces_to_zero(&poly),
                poly,
                generators: subset.to_vec(),
                membership: Membership::Ideal,
                stage_consistent: !gb.contains_one(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    // the three quadratics in c, g, k force c = 0
    let quads: Vec<MultiPoly> = steps[8..11].iter().map(|s| s.poly.clone()).collect();
    let qideal = Ideal::with_vars(vec!["b3".into(), "b4".into(), "b5".into()], quads);
    let c2 = letters("c^2");
    let qgb = buchberger(&qideal, MonomialOrder::GrevLex, cfg)?;
    let in_radical = radical_contains(&qideal, &c2, cfg)?;
    steps.push(DerivationStep {
        statement: "c^2".into(),
        poly: c2.clone(),
        generators: vec![],
        membership: if qgb.reduces_to_zero(&c2) { Membership::Ideal } else { Membership::Radical },
        stage_consistent: !qgb.contains_one(),
        holds: in_radical,
    });
    // with cd + 2/3 the full system is inconsistent
    let full = buchberger(&case.ideal(), MonomialOrder::GrevLex, cfg)?;
    steps.push(DerivationStep {
        statement: "1".into(),
        poly: MultiPoly::one(),
        generators: (2..=ts.m).collect(),
        membership: Membership::Ideal,
        stage_consistent: !full.contains_one(),
        holds: full.contains_one(),
    });
    Ok(steps)
}
