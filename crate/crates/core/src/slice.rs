//! Rectangle and hexagon relations on F₂ points; ghost detection.

use std::collections::BTreeMap;

use ghostchar_poly::{EvalRing, QuadNumber, Rational};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::f2::{F2Point, FullCoords};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SliceOptions {
    /// Residual below which a relation counts as satisfied.
    pub tol: f64,
    /// Check rectangles `{1,2,a,b}` over every arc label, not only seed labels.
    pub full_range: bool,
    pub hexagon_max: usize,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions { tol: 1e-8, full_range: false, hexagon_max: 6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RectangleResidual {
    pub indices: [usize; 4],
    pub value: Complex64,
    pub exact: Option<QuadNumber>,
}

impl RectangleResidual {
    pub fn satisfied(&self, tol: f64) -> bool {
        match &self.exact {
            Some(q) => q.is_zero(),
            None => self.value.norm() <= tol,
        }
    }
}

fn det<R: EvalRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let neg = R::from_rational(&Rational::from_integer((-1).into()));
    let mut acc = R::zero_elem();
    for col in 0..n {
        let minor: Vec<Vec<R>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect()).collect();
        let mut term = m[0][col].ring_mul(&det(&minor));
        if col % 2 == 1 {
            term = term.ring_mul(&neg);
        }
        acc = acc.ring_add(&term);
    }
    acc
}

fn det_complex(m: Vec<Vec<Complex64>>) -> Complex64 {
    det(&m)
}

/// 4×4 determinant on `{1, 2, a, b}` with diagonal 2.
pub fn rectangle_residual(x: &FullCoords, a: usize, b: usize) -> RectangleResidual {
    assert!(3 <= a && a < b && b <= x.n, "rectangle indices need 3 ≤ a < b ≤ n");
    let idx = [1, 2, a, b];
    rectangle_on(x, idx)
}

/// Rectangle determinant on an arbitrary ordered 4-tuple of labels.
pub fn rectangle_on(x: &FullCoords, idx: [usize; 4]) -> RectangleResidual {
    let value = det_complex(idx.iter().map(|&p| idx.iter().map(|&q| x.get(p, q)).collect()).collect());
    let exact = x.has_exact().then(|| {
        let m: Vec<Vec<QuadNumber>> =
            idx.iter().map(|&p| idx.iter().map(|&q| x.get_exact(p, q).expect("exact").clone()).collect()).collect();
        det(&m)
    });
    let value = exact.as_ref().map(|q| q.to_complex()).unwrap_or(value);
    RectangleResidual { indices: idx, value, exact }
}

#[derive(Clone, Debug, Serialize)]
pub struct HexagonWitness {
    pub index_set: Vec<usize>,
    /// Triple values keyed `"i,j,k"`.
    pub triple_values: BTreeMap<String, Complex64>,
    pub consistent: bool,
    /// Largest scaled residual `|x_I x_J − D(I,J)| / (1 + |D(I,J)|)`.
    pub max_residual: f64,
    /// Pair of triples attaining the largest residual.
    pub worst: Option<([usize; 3], [usize; 3])>,
}

fn triples(s: &[usize]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            for k in j + 1..s.len() {
                out.push([s[i], s[j], s[k]]);
            }
        }
    }
    out
}

fn half_det(x: &FullCoords, i: &[usize; 3], j: &[usize; 3]) -> Complex64 {
    0.5 * det_complex(i.iter().map(|&p| j.iter().map(|&q| x.get(p, q)).collect()).collect())
}

/// Triple values on `indices` satisfying every hexagon relation, if any.
///
/// The relations are bilinear in the triple values, so fixing the triple with the
/// largest square up to a global sign determines every other value; the search
/// over signs collapses to that one propagation.
pub fn hexagon_lift(x: &FullCoords, indices: &[usize], max_size: usize, tol: f64) -> HexagonWitness {
    let mut s: Vec<usize> = indices.to_vec();
    s.sort_unstable();
    s.dedup();
    s.truncate(max_size);
    let ts = triples(&s);
    let d: Vec<Vec<Complex64>> = ts.iter().map(|i| ts.iter().map(|j| half_det(x, i, j)).collect()).collect();
    let pivot = (0..ts.len()).max_by(|&a, &b| d[a][a].norm().total_cmp(&d[b][b].norm()));
    let values: Vec<Complex64> = match pivot {
        Some(p) if d[p][p].norm() > tol => {
            let tp = d[p][p].sqrt();
            (0..ts.len()).map(|j| if j == p { tp } else { d[p][j] / tp }).collect()
        }
        _ => vec![Complex64::new(0.0, 0.0); ts.len()],
    };
    let mut max_residual: f64 = 0.0;
    let mut worst = None;
    for a in 0..ts.len() {
        for b in a..ts.len() {
            let r = (values[a] * values[b] - d[a][b]).norm() / (1.0 + d[a][b].norm());
            if r > max_residual {
                max_residual = r;
                worst = Some((ts[a], ts[b]));
            }
        }
    }
    let triple_values =
        ts.iter().zip(&values).map(|(t, v)| (format!("{},{},{}", t[0], t[1], t[2]), *v)).collect();
    HexagonWitness { index_set: s, triple_values, consistent: max_residual <= tol, max_residual, worst }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FailedRelation {
    Rectangle { indices: [usize; 4], residual: Complex64, exact: Option<QuadNumber> },
    Hexagon { indices: Vec<usize>, residual: f64, triples: Option<([usize; 3], [usize; 3])> },
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostReport {
    pub point: F2Point,
    pub is_ghost: bool,
    pub failed_relation: Option<FailedRelation>,
    pub rectangles: Vec<RectangleResidual>,
    pub hexagon: HexagonWitness,
}

/// Ghost iff some rectangle `{1,2,a,b}` fails or the seed-index hexagon lift is inconsistent.
pub fn classify_ghost(pt: &F2Point, x: &FullCoords, m: usize, opts: &SliceOptions) -> GhostReport {
    let top = if opts.full_range { x.n } else { m.min(x.n) };
    let mut rectangles = Vec::new();
    for a in 3..=top {
        for b in a + 1..=top {
            rectangles.push(rectangle_residual(x, a, b));
        }
    }
    let seeds: Vec<usize> = (1..=m.min(x.n)).collect();
    let hexagon = hexagon_lift(x, &seeds, opts.hexagon_max, opts.tol);
    let failed_relation = rectangles
        .iter()
        .find(|r| !r.satisfied(opts.tol))
        .map(|r| FailedRelation::Rectangle { indices: r.indices, residual: r.value, exact: r.exact.clone() })
        .or_else(|| {
            (!hexagon.consistent).then(|| FailedRelation::Hexagon {
                indices: hexagon.index_set.clone(),
                residual: hexagon.max_residual,
                triples: hexagon.worst,
            })
        });
    GhostReport { point: pt.clone(), is_ghost: failed_relation.is_some(), failed_relation, rectangles, hexagon }
}

/// Classify many points concurrently; output order follows input order.
pub fn classify_all(points: &[(F2Point, FullCoords)], m: usize, opts: &SliceOptions) -> Vec<GhostReport> {
    points.par_iter().map(|(p, x)| classify_ghost(p, x, m, opts)).collect()
}
