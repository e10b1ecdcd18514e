#![allow(dead_code)]

use std::sync::OnceLock;

use ghostchar::diagram::{braid_closure, parse_knot, BraidWord, KnotDiagram};
use ghostchar::f2::{
    eliminate_to_seed, generate_f2_relations, lift_point, solve_reduced, symmetry_reduce, F2Point, FullCoords,
    FundamentalRelationSet, ReducedPresentation, SolveConfig, SubstitutionChain,
};
use num_complex::Complex64;

pub struct Solved {
    pub braid: BraidWord,
    pub diagram: KnotDiagram,
    pub relations: FundamentalRelationSet,
    pub chain: SubstitutionChain,
    pub reduced: ReducedPresentation,
    pub points: Vec<F2Point>,
    pub full: Vec<FullCoords>,
}

impl Solved {
    /// `(x12, x13)` as stored on the representatives, or `x12` twice for two seeds.
    pub fn ab(&self, i: usize) -> (Complex64, Complex64) {
        let x = &self.full[i];
        let b = if x.n >= 3 && self.reduced.m >= 3 { x.get(1, 3) } else { x.get(1, 2) };
        (x.get(1, 2), b)
    }

    /// Index of the point nearest `(a, b)`.
    pub fn find(&self, a: f64, b: f64) -> usize {
        let target = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
        (0..self.points.len())
            .min_by(|&i, &j| {
                let d = |k| {
                    let (x, y) = self.ab(k);
                    (x - target.0).norm() + (y - target.1).norm()
                };
                d(i).total_cmp(&d(j))
            })
            .expect("no points")
    }
}

pub fn solve(spec: &str) -> Solved {
    let braid = parse_knot(spec).expect("knot spec");
    let diagram = braid_closure(&braid).expect("closure");
    let relations = generate_f2_relations(&diagram);
    let (chain, rp) = eliminate_to_seed(&relations, &diagram).expect("elimination");
    let reduced = symmetry_reduce(&rp, &braid, &diagram);
    let (points, _) = solve_reduced(&reduced, &SolveConfig::default()).expect("solve");
    let full = points
        .iter()
        .map(|p| lift_point(p, &reduced, &chain, &relations, 1e-8).expect("lift"))
        .collect();
    Solved { braid, diagram, relations, chain, reduced, points, full }
}

pub fn t56() -> &'static Solved {
    static CELL: OnceLock<Solved> = OnceLock::new();
    CELL.get_or_init(|| solve("torus:5,6"))
}
