use std::collections::BTreeMap;
use std::fmt::Write;

use ghostchar::cover::{abelianization, GroupPresentation};
use ghostchar::f2::{F2Point, ReducedPresentation};
use ghostchar::repvar::PreimageVerdict;
use ghostchar::slice::{FailedRelation, GhostReport, HexagonWitness, RectangleResidual};
use num_complex::Complex64;
use serde::Serialize;

use crate::Solved;

#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub index: usize,
    pub label: String,
    pub coords: BTreeMap<String, Complex64>,
    pub exact: BTreeMap<String, String>,
    pub residual: f64,
    pub exact_verified: bool,
    pub lift_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminantEntry {
    pub var: String,
    pub poly: String,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct F2Section {
    pub knot: String,
    pub strands: usize,
    pub crossings: usize,
    pub arcs: usize,
    pub relations: usize,
    pub chain_steps: usize,
    pub unknowns: Vec<String>,
    pub symmetry_classes: Option<Vec<Vec<String>>>,
    pub defining_polys: Vec<String>,
    pub redundant_polys: usize,
    pub groebner_size: usize,
    pub quotient_dimension: usize,
    pub eliminants: Vec<EliminantEntry>,
    pub points: Vec<PointEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostEntry {
    pub index: usize,
    pub label: String,
    pub is_ghost: bool,
    pub failed_relation: Option<FailedRelation>,
    pub rectangles: Vec<RectangleResidual>,
    pub hexagon: HexagonWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostsSection {
    #[serde(flatten)]
    pub f2: F2Section,
    pub ghost_count: usize,
    pub classification: Vec<GhostEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreimageEntry {
    pub index: usize,
    pub label: String,
    pub is_ghost: bool,
    #[serde(flatten)]
    pub verdict: PreimageVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreimageSection {
    #[serde(flatten)]
    pub ghosts: GhostsSection,
    pub preimages: Vec<PreimageEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverSection {
    pub knot: String,
    pub wirtinger_generators: usize,
    pub wirtinger_relators: usize,
    pub knot_group: GroupPresentation,
    pub cover: GroupPresentation,
    /// Invariant factors, `0` for a free summand.
    pub abelianization: Vec<String>,
    pub homology: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Surjectivity {
    Yes,
    No,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    #[serde(flatten)]
    pub preimage: PreimageSection,
    pub cover: CoverSection,
    pub surjective_on_computed_points: Surjectivity,
    pub conclusion: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    F2(F2Section),
    Ghosts(GhostsSection),
    Cover(CoverSection),
    Preimage(PreimageSection),
    Full(FullReport),
}

fn fmt_complex(z: Complex64) -> String {
    let r = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (r(z.re), r(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

/// Seed coordinates as `(v1, v2, ...)`, exact where available.
pub fn point_label(p: &F2Point, rp: &ReducedPresentation) -> String {
    let parts: Vec<String> = rp
        .unknowns()
        .iter()
        .map(|v| match p.exact.get(v) {
            Some(q) => q.to_string(),
            None => p.value(v).map(fmt_complex).unwrap_or_else(|| "?".into()),
        })
        .collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn f2_section(knot: &str, s: &Solved) -> F2Section {
    let points = s
        .points
        .iter()
        .zip(&s.full)
        .enumerate()
        .map(|(i, (p, x))| PointEntry {
            index: i,
            label: point_label(p, &s.reduced),
            coords: p.coords.clone(),
            exact: p.exact.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            residual: p.residual,
            exact_verified: p.exact_verified,
            lift_residual: x.residual,
        })
        .collect();
    F2Section {
        knot: knot.to_string(),
        strands: s.diagram.strands(),
        crossings: s.diagram.crossings.len(),
        arcs: s.diagram.arc_count,
        relations: s.relations.relations.len(),
        chain_steps: s.chain.steps.len(),
        unknowns: s.reduced.unknowns(),
        symmetry_classes: s.reduced.symmetry_classes.clone(),
        defining_polys: s.reduced.defining_polys.iter().map(|p| p.to_string()).collect(),
        redundant_polys: s.reduced.redundant_polys.len(),
        groebner_size: s.method.groebner_size,
        quotient_dimension: s.method.quotient_dimension,
        eliminants: s
            .method
            .eliminants
            .iter()
            .map(|e| EliminantEntry {
                var: e.var.clone(),
                poly: e.poly.to_string(),
                degree: e.poly.degree_in(&e.var) as usize,
            })
            .collect(),
        points,
    }
}

pub(crate) fn ghosts_section(f2: F2Section, s: &Solved, ghosts: &[GhostReport]) -> GhostsSection {
    let classification: Vec<GhostEntry> = ghosts
        .iter()
        .enumerate()
        .map(|(i, g)| GhostEntry {
            index: i,
            label: point_label(&s.points[i], &s.reduced),
            is_ghost: g.is_ghost,
            failed_relation: g.failed_relation.clone(),
            rectangles: g.rectangles.clone(),
            hexagon: g.hexagon.clone(),
        })
        .collect();
    GhostsSection { f2, ghost_count: classification.iter().filter(|g| g.is_ghost).count(), classification }
}

pub(crate) fn preimage_entries(s: &Solved, ghosts: &[GhostReport], verdicts: &[PreimageVerdict]) -> Vec<PreimageEntry> {
    verdicts
        .iter()
        .enumerate()
        .map(|(i, v)| PreimageEntry {
            index: i,
            label: point_label(&s.points[i], &s.reduced),
            is_ghost: ghosts[i].is_ghost,
            verdict: v.clone(),
        })
        .collect()
}

pub(crate) fn preimage_section(
    f2: F2Section,
    s: &Solved,
    ghosts: &[GhostReport],
    preimages: Vec<PreimageEntry>,
) -> PreimageSection {
    PreimageSection { ghosts: ghosts_section(f2, s, ghosts), preimages }
}

pub(crate) fn cover_section(
    knot: &str,
    (w, t, c): (GroupPresentation, GroupPresentation, GroupPresentation),
) -> CoverSection {
    let ab = abelianization(&c);
    let nontrivial: Vec<String> = ab
        .iter()
        .filter(|x| **x != 1.into())
        .map(|x| if *x == 0.into() { "Z".to_string() } else { format!("Z/{x}") })
        .collect();
    CoverSection {
        knot: knot.to_string(),
        wirtinger_generators: w.generators.len(),
        wirtinger_relators: w.relators.len(),
        knot_group: t,
        cover: c,
        abelianization: ab.iter().map(|x| x.to_string()).collect(),
        homology: if nontrivial.is_empty() { "0".into() } else { nontrivial.join(" + ") },
    }
}

pub fn surjectivity(preimages: &[PreimageEntry]) -> Surjectivity {
    if preimages.iter().any(|p| matches!(p.verdict, PreimageVerdict::Empty { .. })) {
        Surjectivity::No
    } else if preimages.iter().all(|p| matches!(p.verdict, PreimageVerdict::InImage { .. })) {
        Surjectivity::Yes
    } else {
        Surjectivity::Undetermined
    }
}

pub(crate) fn full_report(
    f2: F2Section,
    s: &Solved,
    ghosts: &[GhostReport],
    preimages: Vec<PreimageEntry>,
    cover: CoverSection,
) -> FullReport {
    let surj = surjectivity(&preimages);
    let conclusion = match surj {
        Surjectivity::No => "h* not surjective",
        Surjectivity::Yes => "h* surjective on every computed point",
        Surjectivity::Undetermined => "surjectivity of h* undetermined",
    };
    FullReport {
        preimage: preimage_section(f2, s, ghosts, preimages),
        cover,
        surjective_on_computed_points: surj,
        conclusion: conclusion.into(),
    }
}

fn failed_text(f: &FailedRelation) -> String {
    match f {
        FailedRelation::Rectangle { indices, residual, exact } => {
            let v = exact.as_ref().map(|q| q.to_string()).unwrap_or_else(|| fmt_complex(*residual));
            format!("rectangle {{{},{},{},{}}} = {v}", indices[0], indices[1], indices[2], indices[3])
        }
        FailedRelation::Hexagon { indices, residual, .. } => {
            let idx: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
            format!("hexagon on {{{}}} residual {residual:.3e}", idx.join(","))
        }
    }
}

fn verdict_text(v: &PreimageVerdict) -> String {
    match v {
        PreimageVerdict::InImage { reason, witness } => match witness {
            Some(w) => format!("in_image ({reason}, max residual {:.1e})", w.max_residual),
            None => format!("in_image ({reason})"),
        },
        PreimageVerdict::Empty { certificate } => {
            format!("empty ({} case(s), every Groebner basis is {{1}})", certificate.cases.len())
        }
        PreimageVerdict::Inconclusive { reason } => format!("inconclusive ({reason})"),
    }
}

impl F2Section {
    fn summary(&self, out: &mut String) {
        let _ = writeln!(out, "knot: {}", self.knot);
        let _ = writeln!(out, "diagram: {} strands, {} crossings, {} arcs", self.strands, self.crossings, self.arcs);
        let _ = writeln!(
            out,
            "reduction: {} relations, {} chain steps, unknowns [{}], {} defining polynomials",
            self.relations,
            self.chain_steps,
            self.unknowns.join(", "),
            self.defining_polys.len()
        );
        let _ = writeln!(out, "F2 points: {}", self.points.len());
        for p in &self.points {
            let _ = writeln!(out, "  [{}] {}", p.index, p.label);
        }
    }
}

impl GhostsSection {
    fn summary(&self, out: &mut String) {
        self.f2.summary(out);
        let _ = writeln!(out, "ghosts: {}", self.ghost_count);
        for g in self.classification.iter().filter(|g| g.is_ghost) {
            let why = g.failed_relation.as_ref().map(failed_text).unwrap_or_default();
            let _ = writeln!(out, "  [{}] {}: {}", g.index, g.label, why);
        }
    }
}

impl PreimageSection {
    fn summary(&self, out: &mut String) {
        self.ghosts.summary(out);
        let _ = writeln!(out, "preimages of ghost points:");
        for p in self.preimages.iter().filter(|p| p.is_ghost) {
            let _ = writeln!(out, "  [{}] {}: {}", p.index, p.label, verdict_text(&p.verdict));
        }
    }
}

impl CoverSection {
    fn summary(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "knot group: {} Wirtinger generators, {} relators; reduced to {} generators, {} relators",
            self.wirtinger_generators,
            self.wirtinger_relators,
            self.knot_group.generators.len(),
            self.knot_group.relators.len()
        );
        let _ = writeln!(
            out,
            "double branched cover: {} generators, {} relators, H1 = {}",
            self.cover.generators.len(),
            self.cover.relators.len(),
            self.homology
        );
        for (i, r) in self.cover.render_relators().iter().enumerate() {
            let _ = writeln!(out, "  w{} = {}", i + 1, r);
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        match self {
            Report::F2(f) => f.summary(&mut out),
            Report::Ghosts(g) => g.summary(&mut out),
            Report::Cover(c) => {
                let _ = writeln!(out, "knot: {}", c.knot);
                c.summary(&mut out);
            }
            Report::Preimage(p) => p.summary(&mut out),
            Report::Full(f) => {
                f.preimage.summary(&mut out);
                f.cover.summary(&mut out);
                let yn = match f.surjective_on_computed_points {
                    Surjectivity::Yes => "yes",
                    Surjectivity::No => "no",
                    Surjectivity::Undetermined => "undetermined",
                };
                let _ = writeln!(out, "h* surjective on computed points: {yn}");
                let _ = writeln!(out, "conclusion: {}", f.conclusion);
            }
        }
        out
    }
}
