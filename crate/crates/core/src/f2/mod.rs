//! The algebraic set F₂(K) cut out by the fundamental relations
//! `x_ak = x_ij x_ai − x_aj`, one family per Wirtinger triple.

mod solve;

use std::collections::HashMap;

use ghostchar_poly::MultiPoly;
use serde::Serialize;

use crate::diagram::{BraidLayout, BraidWord, KnotDiagram, WirtingerTriple};
use crate::error::F2Error;

pub use solve::{lift_point, solve_reduced, Eliminant, F2Point, FullCoords, SolveConfig, SolveMethod};

/// Canonical symbol for the pair trace `x_pq`, `p ≠ q`.
pub fn pair_symbol(p: usize, q: usize) -> String {
    let (a, b) = if p < q { (p, q) } else { (q, p) };
    format!("x{a}_{b}")
}

/// `x_pq` as a polynomial, with `x_pp = 2`.
pub fn pair_poly(p: usize, q: usize) -> MultiPoly {
    if p == q {
        MultiPoly::from_int(2)
    } else {
        MultiPoly::var(&pair_symbol(p, q))
    }
}

/// Inverse of [`pair_symbol`].
pub fn parse_pair_symbol(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.strip_prefix('x')?.split_once('_')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalRelation {
    pub a: usize,
    /// Index of the source crossing.
    pub crossing: usize,
    pub lhs: String,
    pub rhs: MultiPoly,
}

impl FundamentalRelation {
    /// `lhs − rhs`; vanishes on F₂(K).
    pub fn as_poly(&self) -> MultiPoly {
        let lhs = match parse_pair_symbol(&self.lhs) {
            Some((p, q)) => pair_poly(p, q),
            None => MultiPoly::from_int(2),
        };
        &lhs - &self.rhs
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalRelationSet {
    pub n: usize,
    pub triples: Vec<WirtingerTriple>,
    /// Oriented crossing data `(over, under_in, under_out)` in crossing order.
    pub oriented: Vec<(usize, usize, usize)>,
    pub relations: Vec<FundamentalRelation>,
    /// Left-edge label and right-edge label identified by the closure.
    pub closure_pairing: Vec<(usize, usize)>,
}

impl FundamentalRelationSet {
    /// Largest |x_ak − (x_ij x_ai − x_aj)| over all relations.
    pub fn max_residual(&self, x: &FullCoords) -> (f64, String) {
        let mut worst = (0.0f64, String::new());
        for (c, &(i, j, k)) in self.oriented.iter().enumerate() {
            for a in 1..=self.n {
                let r = (x.get(a, k) - (x.get(i, j) * x.get(a, i) - x.get(a, j))).norm();
                if r > worst.0 || worst.1.is_empty() {
                    worst = (r.max(worst.0), format!("crossing {} with a = {a}", c + 1));
                }
            }
        }
        worst
    }
}

pub fn generate_f2_relations(d: &KnotDiagram) -> FundamentalRelationSet {
    let n = d.arc_count;
    let oriented: Vec<(usize, usize, usize)> =
        d.crossings.iter().map(|c| (c.over_arc, c.in_under_arc, c.out_under_arc)).collect();
    let mut relations = Vec::with_capacity(n * oriented.len());
    for (c, &(i, j, k)) in oriented.iter().enumerate() {
        for a in 1..=n {
            let rhs = &(&pair_poly(i, j) * &pair_poly(a, i)) - &pair_poly(a, j);
            let lhs = if a == k { "2".to_string() } else { pair_symbol(a, k) };
            relations.push(FundamentalRelation { a, crossing: c, lhs, rhs });
        }
    }
    FundamentalRelationSet {
        n,
        triples: d.wirtinger_triples(),
        oriented,
        relations,
        closure_pairing: d.closure_pairing.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub symbol: String,
    pub replacement: MultiPoly,
}

/// Rewrites `x_ak` for every arc `k > m`, highest label first.
#[derive(Clone, Debug, Serialize)]
pub struct SubstitutionChain {
    pub m: usize,
    pub n: usize,
    pub steps: Vec<ChainStep>,
    /// `(over, under_in)` of the crossing producing each label `k > m`, indexed by `k - m - 1`.
    pub producers: Vec<(usize, usize)>,
}

impl SubstitutionChain {
    /// Express every `x_pq` as a polynomial in the seed symbols by replaying the chain.
    pub fn expand_all(&self) -> HashMap<(usize, usize), MultiPoly> {
        let mut table: HashMap<(usize, usize), MultiPoly> = HashMap::new();
        let get = |t: &HashMap<(usize, usize), MultiPoly>, p: usize, q: usize| -> MultiPoly {
            if p == q {
                return MultiPoly::from_int(2);
            }
            let key = (p.min(q), p.max(q));
            t.get(&key).cloned().unwrap_or_else(|| pair_poly(p, q))
        };
        for k in self.m + 1..=self.n {
            let (i, j) = self.producers[k - self.m - 1];
            for a in 1..k {
                let v = &(&get(&table, i, j) * &get(&table, a, i)) - &get(&table, a, j);
                table.insert((a, k), v);
            }
        }
        table
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedPresentation {
    pub m: usize,
    pub seed_symbols: Vec<String>,
    /// Vanishing polynomials `g_p(x_pa) − x_pa`.
    pub defining_polys: Vec<MultiPoly>,
    /// `(p, a)` of each defining polynomial.
    pub origins: Vec<(usize, usize)>,
    /// Classes of seed symbols, representative first.
    pub symmetry_classes: Option<Vec<Vec<String>>>,
    /// Further consequences kept after symmetry reduction; solutions must satisfy them too.
    pub redundant_polys: Vec<MultiPoly>,
    /// Set when a symmetry reduction was requested but the braid is not a full cyclic power.
    pub symmetry_skipped: bool,
}

impl ReducedPresentation {
    /// Unknowns of the reduced system.
    pub fn unknowns(&self) -> Vec<String> {
        match &self.symmetry_classes {
            Some(classes) => classes.iter().map(|c| c[0].clone()).collect(),
            None => self.seed_symbols.clone(),
        }
    }

    /// Representative of the class containing `symbol`.
    pub fn representative(&self, symbol: &str) -> String {
        if let Some(classes) = &self.symmetry_classes {
            for c in classes {
                if c.iter().any(|s| s == symbol) {
                    return c[0].clone();
                }
            }
        }
        symbol.to_string()
    }

    /// Every polynomial the solutions must satisfy.
    pub fn all_polys(&self) -> Vec<MultiPoly> {
        self.defining_polys.iter().chain(&self.redundant_polys).cloned().collect()
    }
}

/// Pair value at the segment level: seeds for two left-edge segments, otherwise
/// the later segment is expanded through the crossing that produced it.
struct SegmentExpander<'a> {
    layout: &'a BraidLayout,
    memo: HashMap<(usize, usize), MultiPoly>,
}

impl<'a> SegmentExpander<'a> {
    fn new(layout: &'a BraidLayout) -> Self {
        SegmentExpander { layout, memo: HashMap::new() }
    }

    fn x(&mut self, u: usize, v: usize) -> MultiPoly {
        if u == v {
            return MultiPoly::from_int(2);
        }
        let (u, v) = (u.min(v), u.max(v));
        if self.layout.is_left_edge(v) {
            return pair_poly(u + 1, v + 1);
        }
        if let Some(p) = self.memo.get(&(u, v)) {
            return p.clone();
        }
        let c = self.layout.producing_crossing(v).expect("non-left segment");
        let (over, under, _) = self.layout.crossing_segments[c];
        let r = &(&self.x(over, under) * &self.x(u, over)) - &self.x(u, under);
        self.memo.insert((u, v), r.clone());
        r
    }
}

/// Seed elimination: the substitution chain over arc labels and the closure
/// equations `g_p(x_pa) − x_pa`, `1 ≤ p, a ≤ m`, as polynomials in the seeds.
pub fn eliminate_to_seed(
    rels: &FundamentalRelationSet,
    d: &KnotDiagram,
) -> Result<(SubstitutionChain, ReducedPresentation), F2Error> {
    let layout = &d.layout;
    let m = layout.strands;
    let n = rels.n;

    let mut producers = vec![(0usize, 0usize); n - m];
    let mut seen = vec![false; n - m];
    for &(i, j, k) in &rels.oriented {
        if k > m {
            if seen[k - m - 1] {
                return Err(F2Error::Cyclic);
            }
            seen[k - m - 1] = true;
            producers[k - m - 1] = (i, j);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(F2Error::NotBraidClosure);
    }
    let mut steps = Vec::new();
    for k in (m + 1..=n).rev() {
        let (i, j) = producers[k - m - 1];
        if i >= k || j >= k {
            return Err(F2Error::Cyclic);
        }
        for a in (1..k).rev() {
            let replacement = &(&pair_poly(i, j) * &pair_poly(a, i)) - &pair_poly(a, j);
            steps.push(ChainStep { symbol: pair_symbol(a, k), replacement });
        }
    }
    let chain = SubstitutionChain { m, n, steps, producers };

    let mut ex = SegmentExpander::new(layout);
    let mut defining: Vec<MultiPoly> = Vec::new();
    let mut origins = Vec::new();
    for p in 0..m {
        for a in 0..m {
            let g = &ex.x(layout.right_edge[p], a) - &ex.x(p, a);
            if g.is_zero() || defining.contains(&g) {
                continue;
            }
            defining.push(g);
            origins.push((p + 1, a + 1));
        }
    }
    let seed_symbols = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| pair_symbol(i, j))).collect();
    Ok((
        chain,
        ReducedPresentation {
            m,
            seed_symbols,
            defining_polys: defining,
            origins,
            symmetry_classes: None,
            redundant_polys: Vec::new(),
            symmetry_skipped: false,
        },
    ))
}

/// Full closure-equation table `(p, a) → g_p(x_pa) − x_pa` without deduplication.
pub fn closure_equation_table(d: &KnotDiagram) -> Vec<((usize, usize), MultiPoly)> {
    let layout = &d.layout;
    let m = layout.strands;
    let mut ex = SegmentExpander::new(layout);
    let mut out = Vec::with_capacity(m * m);
    for p in 0..m {
        for a in 0..m {
            out.push(((p + 1, a + 1), &ex.x(layout.right_edge[p], a) - &ex.x(p, a)));
        }
    }
    out
}

/// Orbits of seed pairs under the cyclic shift `i ↦ i + 1 (mod m)`; representative `(1, 1 + d)`.
pub fn cyclic_classes(m: usize) -> Vec<Vec<String>> {
    let mut classes: Vec<Vec<String>> = Vec::new();
    for d in 1..=m / 2 {
        let mut c = vec![pair_symbol(1, 1 + d)];
        for i in 1..=m {
            for j in i + 1..=m {
                let dist = (j - i).min(m - (j - i));
                let s = pair_symbol(i, j);
                if dist == d && s != c[0] {
                    c.push(s);
                }
            }
        }
        classes.push(c);
    }
    classes
}

/// Substitute cyclic class representatives into the closure equations.
///
/// Kept as defining polynomials: the diagonal equation for `(1,1)` and, for each
/// representative `x_1j`, the equations `(1, j)` and `(j, 1)`. Every other
/// distinct substituted equation is kept in `redundant_polys`.
pub fn symmetry_reduce(rp: &ReducedPresentation, b: &BraidWord, d: &KnotDiagram) -> ReducedPresentation {
    let m = rp.m;
    if !b.is_full_cyclic() || m < 3 {
        let mut out = rp.clone();
        out.symmetry_skipped = !b.is_full_cyclic() && m >= 3;
        return out;
    }
    let classes = cyclic_classes(m);
    let mut bindings: HashMap<String, MultiPoly> = HashMap::new();
    for c in &classes {
        for s in &c[1..] {
            bindings.insert(s.clone(), MultiPoly::var(&c[0]));
        }
    }
    let table = closure_equation_table(d);
    let lookup: HashMap<(usize, usize), MultiPoly> =
        table.iter().map(|(k, g)| (*k, g.substitute(&bindings))).collect();

    let mut keys: Vec<(usize, usize)> = vec![(1, 1)];
    for c in &classes {
        let (_, j) = parse_pair_symbol(&c[0]).expect("pair symbol");
        keys.push((1, j));
        keys.push((j, 1));
    }
    let mut defining = Vec::new();
    let mut origins = Vec::new();
    for k in keys {
        let g = lookup[&k].clone();
        if !g.is_zero() && !defining.contains(&g) {
            defining.push(g);
            origins.push(k);
        }
    }
    let mut redundant: Vec<MultiPoly> = Vec::new();
    for (k, _) in &table {
        let g = &lookup[k];
        if !g.is_zero() && !defining.contains(g) && !redundant.contains(g) {
            redundant.push(g.clone());
        }
    }
    ReducedPresentation {
        m,
        seed_symbols: rp.seed_symbols.clone(),
        defining_polys: defining,
        origins,
        symmetry_classes: Some(classes),
        redundant_polys: redundant,
        symmetry_skipped: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, torus_braid};

    #[test]
    fn symbols() {
        assert_eq!(pair_symbol(18, 14), "x14_18");
        assert_eq!(parse_pair_symbol("x14_18"), Some((14, 18)));
        assert_eq!(pair_poly(3, 3), MultiPoly::from_int(2));
    }

    #[test]
    fn trefoil_relation_count() {
        let d = braid_closure(&torus_braid(2, 3).unwrap()).unwrap();
        let rels = generate_f2_relations(&d);
        assert_eq!(rels.relations.len(), 9);
    }

    #[test]
    fn cyclic_classes_for_four_and_five_strands() {
        let c4 = cyclic_classes(4);
        assert_eq!(c4.len(), 2);
        assert_eq!(c4[0], vec!["x1_2", "x1_4", "x2_3", "x3_4"]);
        assert_eq!(c4[1], vec!["x1_3", "x2_4"]);
        let c5 = cyclic_classes(5);
        assert_eq!(c5[0], vec!["x1_2", "x1_5", "x2_3", "x3_4", "x4_5"]);
        assert_eq!(c5[1], vec!["x1_3", "x1_4", "x2_4", "x2_5", "x3_5"]);
    }
}
