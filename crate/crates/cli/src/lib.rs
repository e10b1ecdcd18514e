//! Orchestration behind the `ghost` binary: knot spec in, JSON report and text summary out.

mod report;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ghostchar::cover::{branched_cover_presentation, tietze_reduce, wirtinger_presentation, GroupPresentation};
use ghostchar::diagram::{braid_closure, parse_knot, BraidWord, KnotDiagram};
use ghostchar::f2::{
    eliminate_to_seed, generate_f2_relations, lift_point, solve_reduced, symmetry_reduce, F2Point, FullCoords,
    FundamentalRelationSet, ReducedPresentation, SolveConfig, SolveMethod, SubstitutionChain,
};
use ghostchar::repvar::{
    printed_t56_witness, preimage_report, t56_parabolic_witness, NewtonConfig, PreimageContext, PreimageVerdict,
};
use ghostchar::slice::{classify_all, GhostReport, SliceOptions};
use ghostchar::{CoverError, DiagramError, F2Error, RepError};
use ghostchar_poly::{GroebnerConfig, PolyError};

pub use report::{
    point_label, surjectivity, CoverSection, F2Section, FullReport, GhostEntry, GhostsSection, PointEntry,
    PreimageEntry, PreimageSection, Report, Surjectivity,
};

#[derive(Parser, Debug, Clone)]
#[command(name = "ghost", version, about = "Ghost characters and branched-cover representations of braid-closure knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    /// Solve the fundamental-relation variety.
    F2,
    /// Solve and classify ghost points.
    Ghosts,
    /// Presentations of the knot group and the double branched cover.
    Cover,
    /// Decide the preimage of every ghost point.
    Preimage,
    /// Everything, with a surjectivity conclusion.
    Full,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Knot spec: `torus:p,q` or `braid:m:i j -k ...`.
    #[arg(global = true)]
    pub spec: Option<String>,
    /// Knot spec (alternative to the positional argument).
    #[arg(long, global = true)]
    pub knot: Option<String>,
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance for relation and witness checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Cap on S-pairs processed per Gröbner basis.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_pairs: usize,
    /// Cap on total degree of Gröbner basis elements.
    #[arg(long, global = true, default_value_t = 60)]
    pub max_degree: u32,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json_only: bool,
    /// Random starts for the numeric witness search.
    #[arg(long, global = true, default_value_t = 1000)]
    pub newton_starts: usize,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub knot: String,
    pub command: CommandKind,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub groebner: GroebnerConfig,
    pub json_only: bool,
    pub newton_starts: usize,
}

impl RunConfig {
    pub fn new(knot: &str, command: CommandKind) -> Self {
        RunConfig {
            knot: knot.to_string(),
            command,
            out: None,
            tol: 1e-8,
            groebner: GroebnerConfig::default(),
            json_only: false,
            newton_starts: 1000,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self, RunError> {
        let o = cli.options;
        let knot = match (o.spec, o.knot) {
            (Some(_), Some(_)) => return Err(RunError::Parse("give the knot either positionally or with --knot".into())),
            (Some(k), None) | (None, Some(k)) => k,
            (None, None) => return Err(RunError::Parse("missing knot spec".into())),
        };
        if !(o.tol > 0.0) {
            return Err(RunError::Parse(format!("tolerance must be positive, got {}", o.tol)));
        }
        if o.max_pairs == 0 || o.max_degree == 0 || o.newton_starts == 0 {
            return Err(RunError::Parse("caps and start counts must be positive".into()));
        }
        Ok(RunConfig {
            knot,
            command: cli.command,
            out: o.out,
            tol: o.tol,
            groebner: GroebnerConfig { max_pairs: o.max_pairs, max_degree: o.max_degree },
            json_only: o.json_only,
            newton_starts: o.newton_starts,
        })
    }
}

#[derive(Debug)]
pub enum RunError {
    Parse(String),
    ResourceCap(String),
    Invariant(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Parse(_) => 1,
            RunError::ResourceCap(_) => 2,
            RunError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Parse(m) => write!(f, "parse error: {m}"),
            RunError::ResourceCap(m) => write!(f, "resource cap: {m}"),
            RunError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<DiagramError> for RunError {
    fn from(e: DiagramError) -> Self {
        RunError::Parse(e.to_string())
    }
}

fn poly_error(e: PolyError) -> RunError {
    match e {
        PolyError::ResourceCap(m) => RunError::ResourceCap(m),
        other => RunError::Invariant(other.to_string()),
    }
}

impl From<F2Error> for RunError {
    fn from(e: F2Error) -> Self {
        match e {
            F2Error::Poly(p) => poly_error(p),
            other => RunError::Invariant(other.to_string()),
        }
    }
}

impl From<RepError> for RunError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Poly(p) => poly_error(p),
            other => RunError::Invariant(other.to_string()),
        }
    }
}

impl From<CoverError> for RunError {
    fn from(e: CoverError) -> Self {
        RunError::Invariant(e.to_string())
    }
}

/// Intermediate results shared by every command.
pub struct Solved {
    pub braid: BraidWord,
    pub diagram: KnotDiagram,
    pub relations: FundamentalRelationSet,
    pub chain: SubstitutionChain,
    pub reduced: ReducedPresentation,
    pub points: Vec<F2Point>,
    pub method: SolveMethod,
    pub full: Vec<FullCoords>,
}

pub fn solve_knot(cfg: &RunConfig) -> Result<Solved, RunError> {
    let braid = parse_knot(&cfg.knot)?;
    let diagram = braid_closure(&braid)?;
    let relations = generate_f2_relations(&diagram);
    let (chain, rp) = eliminate_to_seed(&relations, &diagram)?;
    let reduced = symmetry_reduce(&rp, &braid, &diagram);
    let solve_cfg = SolveConfig { groebner: cfg.groebner, ..SolveConfig::default() };
    let (points, method) = solve_reduced(&reduced, &solve_cfg)?;
    let full = points
        .iter()
        .map(|p| lift_point(p, &reduced, &chain, &relations, cfg.tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Solved { braid, diagram, relations, chain, reduced, points, method, full })
}

pub fn classify(s: &Solved, cfg: &RunConfig) -> Result<Vec<GhostReport>, RunError> {
    let opts = SliceOptions { tol: cfg.tol, ..SliceOptions::default() };
    let pairs: Vec<(F2Point, FullCoords)> = s.points.iter().cloned().zip(s.full.iter().cloned()).collect();
    let reports = classify_all(&pairs, s.reduced.m, &opts);
    if let Some(r) = reports.iter().find(|r| r.is_ghost != r.failed_relation.is_some()) {
        return Err(RunError::Invariant(format!("ghost flag without failed relation at {:?}", r.point.coords)));
    }
    Ok(reports)
}

pub fn cover_of(d: &KnotDiagram) -> Result<(GroupPresentation, GroupPresentation, GroupPresentation), RunError> {
    let w = wirtinger_presentation(d);
    let t = tietze_reduce(&w, d.strands())?;
    let c = branched_cover_presentation(&t)?;
    Ok((w, t, c))
}

pub fn preimages(
    s: &Solved,
    ghosts: &[GhostReport],
    cover: &GroupPresentation,
    cfg: &RunConfig,
) -> Result<Vec<PreimageVerdict>, RunError> {
    let ctx = PreimageContext {
        cover,
        groebner: cfg.groebner,
        tol: cfg.tol,
        newton: NewtonConfig { starts: cfg.newton_starts, ..NewtonConfig::default() },
        stored: vec![printed_t56_witness(), t56_parabolic_witness()],
    };
    s.points
        .iter()
        .zip(ghosts)
        .map(|(p, g)| preimage_report(p, &s.reduced, g.is_ghost, &ctx).map_err(RunError::from))
        .collect()
}

/// Run one command; returns the report without touching the filesystem.
pub fn execute(cfg: &RunConfig) -> Result<Report, RunError> {
    if cfg.command == CommandKind::Cover {
        let braid = parse_knot(&cfg.knot)?;
        let diagram = braid_closure(&braid)?;
        return Ok(Report::Cover(report::cover_section(&cfg.knot, cover_of(&diagram)?)));
    }
    let s = solve_knot(cfg)?;
    let f2 = report::f2_section(&cfg.knot, &s);
    if cfg.command == CommandKind::F2 {
        return Ok(Report::F2(f2));
    }
    let ghosts = classify(&s, cfg)?;
    if cfg.command == CommandKind::Ghosts {
        return Ok(Report::Ghosts(report::ghosts_section(f2, &s, &ghosts)));
    }
    let covers = cover_of(&s.diagram)?;
    let verdicts = preimages(&s, &ghosts, &covers.2, cfg)?;
    let pre = report::preimage_entries(&s, &ghosts, &verdicts);
    if cfg.command == CommandKind::Preimage {
        return Ok(Report::Preimage(report::preimage_section(f2, &s, &ghosts, pre)));
    }
    let cover = report::cover_section(&cfg.knot, covers);
    Ok(Report::Full(report::full_report(f2, &s, &ghosts, pre, cover)))
}

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Execute, write the JSON report if requested, and return the text to print.
pub fn run(cfg: &RunConfig) -> Result<String, RunError> {
    let report = execute(cfg)?;
    let json = report.to_json();
    if let Some(path) = &cfg.out {
        write_atomic(path, json.as_bytes()).map_err(|e| RunError::Invariant(format!("writing {}: {e}", path.display())))?;
    }
    Ok(if cfg.json_only { json } else { report.summary() })
}
