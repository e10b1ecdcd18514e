use std::collections::BTreeMap;

use ghostchar_poly::{GroebnerConfig, PolyError};
use num_complex::Complex64;
use serde::Serialize;

use super::newton::{newton_search, CompiledSystem, NewtonConfig};
use super::{build_trace_system, emptiness_check, exact_seed_targets, EmptinessCertificate};
use crate::cover::{evaluate_word, GroupPresentation};
use crate::error::RepError;
use crate::f2::{pair_symbol, F2Point, ReducedPresentation};
use crate::mat2::Mat2;

/// Numeric seed pair traces `x_pq`, `1 ≤ p < q ≤ m`.
pub fn seed_targets(pt: &F2Point, rp: &ReducedPresentation) -> Result<BTreeMap<(usize, usize), Complex64>, RepError> {
    let mut out = BTreeMap::new();
    for p in 1..=rp.m {
        for q in p + 1..=rp.m {
            let v = pt.value(&rp.representative(&pair_symbol(p, q))).ok_or(RepError::MissingCoordinate(p, q))?;
            out.insert((p, q), v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCheck {
    pub label: String,
    pub expected: Complex64,
    pub achieved: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepWitness {
    pub generators: Vec<String>,
    pub matrices: Vec<Mat2>,
    pub det_residual: f64,
    pub trace_report: Vec<TraceCheck>,
    /// Entrywise distance from the identity of each relator image.
    pub relator_report: Vec<f64>,
    pub max_residual: f64,
}

/// Accept `X_2..X_m` as images of `x_p = m_1 m_p` when determinants, pair traces and all relators check out.
pub fn verify_witness(
    matrices: &[Mat2],
    cover: &GroupPresentation,
    targets: &BTreeMap<(usize, usize), Complex64>,
    tol: f64,
) -> Result<RepWitness, RepError> {
    let m = cover.generators.len() + 1;
    if matrices.len() != m - 1 {
        return Err(RepError::WitnessRejected(format!(
            "{} matrices for {} generators",
            matrices.len(),
            m - 1
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let det_residual = matrices.iter().map(|x| (x.det() - one).norm()).fold(0.0, f64::max);
    if !(det_residual <= tol) {
        return Err(RepError::WitnessRejected(format!("determinant off by {det_residual:e}")));
    }
    let x = |p: usize| matrices[p - 2];
    let mut trace_report = Vec::new();
    for (&(p, q), &expected) in targets {
        if q > m {
            continue;
        }
        let (label, achieved) = if p == 1 {
            (format!("tr X{q}"), x(q).trace())
        } else {
            (format!("tr X{p}^-1 X{q}"), (x(p).inverse() * x(q)).trace())
        };
        let residual = (achieved - expected).norm();
        if !(residual <= tol) {
            return Err(RepError::WitnessRejected(format!("{label} = {achieved}, expected {expected}")));
        }
        trace_report.push(TraceCheck { label, expected, achieved, residual });
    }
    let mut relator_report = Vec::new();
    for (i, r) in cover.relators.iter().enumerate() {
        let d = evaluate_word(r, matrices)?.distance(&Mat2::identity());
        if !(d <= tol) {
            return Err(RepError::WitnessRejected(format!("relator {} off identity by {d:e}", i + 1)));
        }
        relator_report.push(d);
    }
    let max_residual = trace_report
        .iter()
        .map(|t| t.residual)
        .chain(relator_report.iter().copied())
        .fold(det_residual, f64::max);
    Ok(RepWitness {
        generators: cover.generators.clone(),
        matrices: matrices.to_vec(),
        det_residual,
        trace_report,
        relator_report,
        max_residual,
    })
}

/// Images of `m1m2, m1m3, m1m4, m1m5` for the T(5,6) point `(x12, x13) = (0, -1)`.
pub fn printed_t56_witness() -> Vec<Mat2> {
    let c = Complex64::new;
    let s5 = 5f64.sqrt();
    vec![
        Mat2::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)),
        Mat2::new(c(-0.5, 0.0), c(-s5 / 4.0, -0.5), c(s5 / 3.0, -2.0 / 3.0), c(-0.5, 0.0)),
        Mat2::new(c(-0.5, -0.5), c(s5 / 4.0, -0.25), c(-s5 / 3.0, -1.0 / 3.0), c(-0.5, 0.5)),
        Mat2::new(c(0.0, -0.5), c(0.0, 0.75), c(0.0, 1.0), c(0.0, 0.5)),
    ]
}

/// Images of `m1m2, m1m3, m1m4, m1m5` for the T(5,6) point `(x12, x13) = (-2, 1)`,
/// with `m1m2` and `m1m5` parabolic and `m1m3` diagonal.
pub fn t56_parabolic_witness() -> Vec<Mat2> {
    let c = Complex64::new;
    let a5 = c(-1.0, 2.0 / 3f64.sqrt());
    let lam = 0.75 * a5 + 1.25;
    let (b5, c5) = (c(1.0, 0.0), c(4.0 / 3.0, 0.0));
    // b4² + (7/4) b4 + 1 = 0
    let b4 = c(-7.0 / 8.0, 15f64.sqrt() / 8.0);
    let c4 = c(4.0 / 3.0, 0.0) / b4;
    let a4 = -1.25 * a5 - 0.75;
    let a2 = -0.5 * a5 - 1.5;
    let (b2, c2) = (-(b4 + b5), -(c4 + c5));
    let t = |x: f64| c(x, 0.0);
    vec![
        Mat2::new(a2, b2, c2, t(-2.0) - a2),
        Mat2::new(lam, t(0.0), t(0.0), t(1.0) - lam),
        Mat2::new(a4, b4, c4, t(1.0) - a4),
        Mat2::new(a5, b5, c5, t(-2.0) - a5),
    ]
}

pub struct PreimageContext<'a> {
    pub cover: &'a GroupPresentation,
    pub groebner: GroebnerConfig,
    pub tol: f64,
    pub newton: NewtonConfig,
    /// Candidate witnesses tried before any numeric search.
    pub stored: Vec<Vec<Mat2>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PreimageVerdict {
    InImage { reason: String, witness: Option<RepWitness> },
    Empty { certificate: EmptinessCertificate },
    Inconclusive { reason: String },
}

impl PreimageVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            PreimageVerdict::InImage { .. } => "in_image",
            PreimageVerdict::Empty { .. } => "empty",
            PreimageVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Decide whether the point lies in the image of the restriction map on characters.
pub fn preimage_report(
    pt: &F2Point,
    rp: &ReducedPresentation,
    is_ghost: bool,
    ctx: &PreimageContext<'_>,
) -> Result<PreimageVerdict, RepError> {
    if !is_ghost {
        return Ok(PreimageVerdict::InImage {
            reason: "non-ghost: lifts to the trace-free slice, whose points all come from the cover".into(),
            witness: None,
        });
    }
    let exact = match exact_seed_targets(pt, rp) {
        Ok(t) => t,
        Err(e) => return Ok(PreimageVerdict::Inconclusive { reason: e.to_string() }),
    };
    let numeric = seed_targets(pt, rp)?;
    let ts = build_trace_system(&exact, rp.m)?;
    let cert = match emptiness_check(&ts, &ctx.groebner) {
        Ok(c) => c,
        Err(RepError::Poly(PolyError::ResourceCap(msg))) => {
            return Ok(PreimageVerdict::Inconclusive { reason: format!("resource cap: {msg}") })
        }
        Err(e) => return Err(e),
    };
    if cert.empty {
        return Ok(PreimageVerdict::Empty { certificate: cert });
    }
    for cand in &ctx.stored {
        if let Ok(w) = verify_witness(cand, ctx.cover, &numeric, ctx.tol) {
            return Ok(PreimageVerdict::InImage { reason: "stored witness verified".into(), witness: Some(w) });
        }
    }
    for case in &ts.cases {
        let polys: Vec<_> = case.constraints.iter().map(|c| c.poly.clone()).collect();
        let sys = CompiledSystem::new(&polys, &case.vars);
        let out = newton_search(&sys, &ctx.newton);
        if out.best_residual < ctx.newton.accept {
            let vals: BTreeMap<&str, Complex64> =
                case.vars.iter().map(|s| s.as_str()).zip(out.best_point.iter().copied()).collect();
            let mats = ts.matrices_at(|s| vals.get(s).copied().unwrap_or_default());
            if let Ok(w) = verify_witness(&mats, ctx.cover, &numeric, ctx.tol) {
                return Ok(PreimageVerdict::InImage { reason: "numeric witness verified".into(), witness: Some(w) });
            }
        }
    }
    Ok(PreimageVerdict::Inconclusive { reason: "nonempty trace system but no witness satisfied every relator".into() })
}
