//! Braid words, their closure diagrams and Wirtinger triples.
//!
//! Arcs are labelled as follows. The `m` arcs crossing the left edge of the
//! braid are `1..m` from top to bottom. Reading crossings left to right, each
//! crossing starts a new under-arc. An under-arc that runs out to the right
//! edge at position `p` is the continuation of left-edge arc `p` and keeps the
//! label `p`; every other new under-arc takes the next unused label.

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands < 2 {
            return Err(DiagramError::TooFewStrands(strands));
        }
        if letters.is_empty() {
            return Err(DiagramError::EmptyWord);
        }
        for &e in &letters {
            if e == 0 || e.unsigned_abs() as usize >= strands {
                return Err(DiagramError::LetterOutOfRange { letter: e, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Permutation of strand positions, `perm[p]` = final position of the strand entering at `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let m = self.strands;
        // at[k] = starting position of the strand now at position k
        let mut at: Vec<usize> = (0..m).collect();
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; m];
        for (k, &start) in at.iter().enumerate() {
            perm[start] = k;
        }
        perm
    }

    pub fn component_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut count = 0;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        count
    }

    /// True for `(σ_1 ⋯ σ_{m-1})^q` with `q ≥ 1`.
    pub fn is_full_cyclic(&self) -> bool {
        let block: Vec<i32> = (1..self.strands as i32).collect();
        !self.letters.is_empty()
            && self.letters.len().is_multiple_of(block.len())
            && self.letters.chunks(block.len()).all(|c| c == block.as_slice())
    }

    pub fn cyclic_power(&self) -> Option<usize> {
        self.is_full_cyclic().then(|| self.letters.len() / (self.strands - 1))
    }
}

/// Parse `braid:<m>:<l1> <l2> ... [x<r>]`.
pub fn parse_braid(spec: &str) -> Result<BraidWord, DiagramError> {
    let bad = |msg: &str| DiagramError::Malformed(format!("{msg}: `{spec}`"));
    let rest = spec.trim().strip_prefix("braid:").ok_or_else(|| bad("expected `braid:` prefix"))?;
    let (m, word) = rest.split_once(':').ok_or_else(|| bad("expected `braid:<m>:<letters>`"))?;
    let m: usize = m.trim().parse().map_err(|_| bad("strand count is not a positive integer"))?;
    let mut letters: Vec<i32> = Vec::new();
    let mut repeat: Option<usize> = None;
    for tok in word.split_whitespace() {
        if repeat.is_some() {
            return Err(bad("repeat marker must be last"));
        }
        if let Some(r) = tok.strip_prefix('x') {
            let r: usize = r.parse().map_err(|_| bad("bad repeat count"))?;
            if r == 0 {
                return Err(bad("repeat count must be positive"));
            }
            repeat = Some(r);
            continue;
        }
        letters.push(tok.parse().map_err(|_| bad("bad braid letter"))?);
    }
    if let Some(r) = repeat {
        letters = letters.repeat(r);
    }
    BraidWord::new(m, letters)
}

/// `T(p, q)` as the closure of `(σ_1 ⋯ σ_{p-1})^q`.
pub fn torus_braid(p: usize, q: usize) -> Result<BraidWord, DiagramError> {
    if p < 2 || q < 2 {
        return Err(DiagramError::Malformed(format!("torus parameters must be at least 2, got ({p},{q})")));
    }
    if gcd(p, q) != 1 {
        return Err(DiagramError::NotCoprime(p, q));
    }
    let block: Vec<i32> = (1..p as i32).collect();
    BraidWord::new(p, block.repeat(q))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parse `torus:p,q` or `braid:...`.
pub fn parse_knot(spec: &str) -> Result<BraidWord, DiagramError> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("torus:") {
        let (p, q) = rest.split_once(',').ok_or_else(|| DiagramError::Malformed(format!("expected `torus:p,q`: `{spec}`")))?;
        let p: usize = p.trim().parse().map_err(|_| DiagramError::Malformed(format!("bad torus parameter: `{spec}`")))?;
        let q: usize = q.trim().parse().map_err(|_| DiagramError::Malformed(format!("bad torus parameter: `{spec}`")))?;
        return torus_braid(p, q);
    }
    if s.starts_with("braid:") {
        return parse_braid(s);
    }
    Err(DiagramError::Malformed(format!("unknown knot spec `{spec}` (expected `torus:p,q` or `braid:m:...`)")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: i8,
    pub over_arc: usize,
    pub in_under_arc: usize,
    pub out_under_arc: usize,
}

/// Segment-level view of a braid closure. Segments are maximal pieces of the
/// braid between under-crossings or the braid's edges: `0..m` are the
/// left-edge segments, `m + c` is the under-output of crossing `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidLayout {
    pub strands: usize,
    /// Per crossing: (over segment, under input segment, under output segment).
    pub crossing_segments: Vec<(usize, usize, usize)>,
    /// Segment at each right-edge position.
    pub right_edge: Vec<usize>,
    /// Arc label (1-based) of each segment.
    pub segment_arc: Vec<usize>,
}

impl BraidLayout {
    pub fn segment_count(&self) -> usize {
        self.segment_arc.len()
    }

    pub fn is_left_edge(&self, seg: usize) -> bool {
        seg < self.strands
    }

    /// Crossing index whose under-output is `seg`.
    pub fn producing_crossing(&self, seg: usize) -> Option<usize> {
        seg.checked_sub(self.strands)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    pub arc_count: usize,
    pub crossings: Vec<Crossing>,
    pub braid_origin: Option<BraidWord>,
    /// Left-edge arc label paired with the label of the arc leaving the right edge at the same position.
    pub closure_pairing: Vec<(usize, usize)>,
    pub layout: BraidLayout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WirtingerTriple {
    pub over: usize,
    pub under_a: usize,
    pub under_b: usize,
}

impl WirtingerTriple {
    pub fn canonical(over: usize, j: usize, k: usize) -> Self {
        WirtingerTriple { over, under_a: j.min(k), under_b: j.max(k) }
    }
}

pub fn braid_closure(b: &BraidWord) -> Result<KnotDiagram, DiagramError> {
    let m = b.strands;
    let comps = b.component_count();
    if comps != 1 {
        return Err(DiagramError::MultiComponent(comps));
    }
    let c = b.letters.len();
    let mut pos: Vec<usize> = (0..m).collect();
    let mut crossing_segments = Vec::with_capacity(c);
    for (k, &e) in b.letters.iter().enumerate() {
        let i = e.unsigned_abs() as usize - 1;
        let new_seg = m + k;
        if e > 0 {
            let (over, under) = (pos[i], pos[i + 1]);
            crossing_segments.push((over, under, new_seg));
            pos[i + 1] = over;
            pos[i] = new_seg;
        } else {
            let (over, under) = (pos[i + 1], pos[i]);
            crossing_segments.push((over, under, new_seg));
            pos[i] = over;
            pos[i + 1] = new_seg;
        }
    }
    let right_edge = pos;

    let mut segment_arc = vec![0usize; m + c];
    for (p, slot) in segment_arc.iter_mut().take(m).enumerate() {
        *slot = p + 1;
    }
    for (p, &seg) in right_edge.iter().enumerate() {
        if seg < m {
            return Err(DiagramError::PassThroughStrand(seg + 1));
        }
        segment_arc[seg] = p + 1;
    }
    let mut next = m + 1;
    for slot in segment_arc.iter_mut().skip(m) {
        if *slot == 0 {
            *slot = next;
            next += 1;
        }
    }
    let arc_count = next - 1;
    debug_assert_eq!(arc_count, c);

    let crossings = b
        .letters
        .iter()
        .zip(&crossing_segments)
        .map(|(&e, &(o, u, w))| Crossing {
            sign: if e > 0 { 1 } else { -1 },
            over_arc: segment_arc[o],
            in_under_arc: segment_arc[u],
            out_under_arc: segment_arc[w],
        })
        .collect();
    let closure_pairing = right_edge.iter().enumerate().map(|(p, &seg)| (p + 1, segment_arc[seg])).collect();

    Ok(KnotDiagram {
        arc_count,
        crossings,
        braid_origin: Some(b.clone()),
        closure_pairing,
        layout: BraidLayout { strands: m, crossing_segments, right_edge, segment_arc },
    })
}

impl KnotDiagram {
    pub fn strands(&self) -> usize {
        self.layout.strands
    }

    pub fn wirtinger_triples(&self) -> Vec<WirtingerTriple> {
        wirtinger_triples(self)
    }
}

/// One canonical triple per crossing, in crossing order.
pub fn wirtinger_triples(d: &KnotDiagram) -> Vec<WirtingerTriple> {
    d.crossings.iter().map(|c| WirtingerTriple::canonical(c.over_arc, c.in_under_arc, c.out_under_arc)).collect()
}

#[derive(Serialize)]
struct CrossingJson {
    sign: i8,
    over: usize,
    under_in: usize,
    under_out: usize,
}

#[derive(Serialize)]
struct DiagramJson {
    arcs: usize,
    crossings: Vec<CrossingJson>,
    closure_pairing: Vec<[usize; 2]>,
}

impl Serialize for KnotDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramJson {
            arcs: self.arc_count,
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingJson { sign: c.sign, over: c.over_arc, under_in: c.in_under_arc, under_out: c.out_under_arc })
                .collect(),
            closure_pairing: self.closure_pairing.iter().map(|&(l, r)| [l, r]).collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_braid("braid:2:1 1 1").unwrap(), BraidWord { strands: 2, letters: vec![1, 1, 1] });
        let t56 = parse_braid("braid:5:1 2 3 4 x6").unwrap();
        assert_eq!(t56.letters.len(), 24);
        assert_eq!(t56, torus_braid(5, 6).unwrap());
        assert_eq!(parse_braid("braid:3:1 -2 1 -2").unwrap().letters, vec![1, -2, 1, -2]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(parse_braid("braid:2:1 2"), Err(DiagramError::LetterOutOfRange { .. })));
        assert!(matches!(parse_braid("braid:3:"), Err(DiagramError::EmptyWord)));
        assert!(matches!(parse_braid("braid:3:1 0"), Err(DiagramError::LetterOutOfRange { .. })));
        assert!(matches!(parse_braid("braid:3:1 x2 2"), Err(DiagramError::Malformed(_))));
        assert!(matches!(parse_braid("braid 3 1"), Err(DiagramError::Malformed(_))));
        assert!(matches!(torus_braid(4, 6), Err(DiagramError::NotCoprime(4, 6))));
        assert!(matches!(parse_knot("torus:5"), Err(DiagramError::Malformed(_))));
    }

    #[test]
    fn torus_word_shapes() {
        assert_eq!(torus_braid(2, 3).unwrap().letters, vec![1, 1, 1]);
        assert_eq!(torus_braid(4, 5).unwrap().letters.len(), 15);
        assert!(torus_braid(5, 6).unwrap().is_full_cyclic());
        assert!(!parse_braid("braid:3:1 -2 1 -2").unwrap().is_full_cyclic());
    }

    #[test]
    fn trefoil_arcs() {
        let d = braid_closure(&torus_braid(2, 3).unwrap()).unwrap();
        assert_eq!(d.arc_count, 3);
        let t = d.wirtinger_triples();
        assert_eq!(
            t,
            vec![WirtingerTriple::canonical(1, 2, 3), WirtingerTriple::canonical(3, 1, 2), WirtingerTriple::canonical(2, 3, 1)]
        );
    }

    #[test]
    fn figure_eight_arcs() {
        let d = braid_closure(&parse_braid("braid:3:1 -2 1 -2").unwrap()).unwrap();
        assert_eq!(d.arc_count, 4);
        assert_eq!(d.crossings.len(), 4);
        let c: Vec<(usize, usize, usize)> = d.crossings.iter().map(|c| (c.over_arc, c.in_under_arc, c.out_under_arc)).collect();
        assert_eq!(c, vec![(1, 2, 4), (3, 1, 2), (4, 3, 1), (2, 4, 3)]);
    }

    #[test]
    fn multi_component_and_pass_through_rejected() {
        assert!(matches!(braid_closure(&parse_braid("braid:2:1 1").unwrap()), Err(DiagramError::MultiComponent(2))));
        // left-edge strand 3 only ever passes over
        let b = parse_braid("braid:3:-2 -1").unwrap();
        assert_eq!(b.component_count(), 1);
        assert!(matches!(braid_closure(&b), Err(DiagramError::PassThroughStrand(3))));
    }
}
