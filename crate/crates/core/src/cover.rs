//! Knot group presentations and the fundamental group of the 2-fold branched cover.

use std::fmt;

use ghostchar_poly::snf::{cokernel_invariants, IntMatrix};
use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::diagram::KnotDiagram;
use crate::error::CoverError;
use crate::mat2::Mat2;

/// Word in a free group; letters are `(generator index, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GroupWord {
    pub letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        GroupWord { letters }
    }

    pub fn gen(g: usize) -> Self {
        GroupWord { letters: vec![(g, 1)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn pow(&self, e: i8) -> Self {
        if e < 0 {
            self.inverse()
        } else {
            self.clone()
        }
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&(g, e)) if g == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        GroupWord { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut s = vec![0i64; ngens];
        for &(g, e) in &self.letters {
            s[g] += e as i64;
        }
        s
    }

    /// Replace every occurrence of generator `g` by `w` (inverted for negative exponents).
    pub fn substitute(&self, g: usize, w: &GroupWord) -> GroupWord {
        let mut letters = Vec::new();
        for &(h, e) in &self.letters {
            if h == g {
                letters.extend(w.pow(e).letters);
            } else {
                letters.push((h, e));
            }
        }
        GroupWord { letters }
    }

    /// Letter form such as `"w^-1 x^-1 y"`.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&(g, e)| if e < 0 { format!("{}^-1", names[g]) } else { names[g].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse the letter form; `1` is the empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<GroupWord, CoverError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, e) = match tok.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (tok, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| CoverError::UnknownGenerator(name.to_string()))?;
            letters.push((g, e));
        }
        Ok(GroupWord { letters })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<GroupWord>) -> Result<Self, CoverError> {
        for r in &relators {
            if let Some(&(g, _)) = r.letters.iter().find(|(g, _)| *g >= generators.len()) {
                return Err(CoverError::BadGenerator(g));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn render_relators(&self) -> Vec<String> {
        self.relators.iter().map(|r| r.render(&self.generators)).collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | {} >", self.generators.join(", "), self.render_relators().join(", "))
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rels: Vec<Vec<(&str, i8)>> = self
            .relators
            .iter()
            .map(|r| r.letters.iter().map(|&(g, e)| (self.generators[g].as_str(), e)).collect())
            .collect();
        let mut st = s.serialize_struct("GroupPresentation", 3)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("relators", &rels)?;
        st.serialize_field("relators_text", &self.render_relators())?;
        st.end()
    }
}

/// One relator `m_i^ε m_j m_i^-ε m_k^-1` per crossing (`ε` the crossing sign),
/// generator `m_a` at index `a - 1`. The crossing whose under-output is arc `m` is dropped.
pub fn wirtinger_presentation(d: &KnotDiagram) -> GroupPresentation {
    let generators = (1..=d.arc_count).map(|a| format!("m{a}")).collect();
    let m = d.strands();
    let mut relators = Vec::new();
    let drop = d.crossings.iter().position(|c| c.out_under_arc == m).unwrap_or(d.crossings.len() - 1);
    for (idx, c) in d.crossings.iter().enumerate() {
        if idx == drop {
            continue;
        }
        let (i, j, k) = (c.over_arc - 1, c.in_under_arc - 1, c.out_under_arc - 1);
        let e = c.sign;
        relators.push(GroupWord::new(vec![(i, e), (j, 1), (i, -e), (k, -1)]));
    }
    GroupPresentation { generators, relators }
}

#[derive(Clone, Debug, Serialize)]
pub struct TietzeReduction {
    pub presentation: GroupPresentation,
    /// Word in the kept generators for each eliminated generator, by original index.
    pub expansions: Vec<(usize, GroupWord)>,
    /// Index of the original relator each kept relator came from.
    pub kept_relators: Vec<usize>,
}

/// Eliminate every generator past the first `keep`, each through a relator in
/// which it appears once alongside only lower-indexed generators.
pub fn tietze_reduce_detailed(p: &GroupPresentation, keep: usize) -> Result<TietzeReduction, CoverError> {
    let n = p.generators.len();
    let mut used = vec![false; p.relators.len()];
    let mut expansion: Vec<Option<GroupWord>> = vec![None; n];
    for (g, slot) in expansion.iter_mut().enumerate().take(keep) {
        *slot = Some(GroupWord::gen(g));
    }
    let mut expansions = Vec::new();
    for g in keep..n {
        let found = p.relators.iter().enumerate().find(|(ri, r)| {
            !used[*ri]
                && r.letters.iter().filter(|(h, _)| *h == g).count() == 1
                && r.letters.iter().all(|(h, _)| *h <= g)
        });
        let Some((ri, r)) = found else {
            return Err(CoverError::NoDefiningRelator(p.generators[g].clone()));
        };
        used[ri] = true;
        // r = A g^e B  ⇒  g^e = A⁻¹ B⁻¹
        let pos = r.letters.iter().position(|(h, _)| *h == g).expect("present");
        let e = r.letters[pos].1;
        let a = GroupWord::new(r.letters[..pos].to_vec());
        let b = GroupWord::new(r.letters[pos + 1..].to_vec());
        let rhs = a.inverse().concat(&b.inverse()).pow(e);
        let mut w = GroupWord::default();
        for &(h, f) in &rhs.letters {
            w = w.concat(&expansion[h].clone().expect("earlier generator").pow(f));
        }
        let w = w.free_reduce();
        expansion[g] = Some(w.clone());
        expansions.push((g, w));
    }
    let mut relators = Vec::new();
    let mut kept_relators = Vec::new();
    for (ri, r) in p.relators.iter().enumerate() {
        if used[ri] {
            continue;
        }
        let mut w = GroupWord::default();
        for &(h, f) in &r.letters {
            w = w.concat(&expansion[h].clone().expect("expanded").pow(f));
        }
        relators.push(w.free_reduce());
        kept_relators.push(ri);
    }
    Ok(TietzeReduction {
        presentation: GroupPresentation { generators: p.generators[..keep].to_vec(), relators },
        expansions,
        kept_relators,
    })
}

pub fn tietze_reduce(p: &GroupPresentation, keep: usize) -> Result<GroupPresentation, CoverError> {
    Ok(tietze_reduce_detailed(p, keep)?.presentation)
}

/// Rewrite an even-length word in meridians as a word in `x_a = m_1 m_a`.
///
/// Modulo `m_1² = 1` every meridian is an involution (meridians are conjugate),
/// so consecutive letters pair as `m_a m_b = x_a⁻¹ x_b` with `x_1 = 1`.
fn rewrite_pairs(w: &GroupWord) -> Option<GroupWord> {
    if w.len() % 2 == 1 {
        return None;
    }
    let mut out = Vec::new();
    for pair in w.letters.chunks(2) {
        let (a, b) = (pair[0].0, pair[1].0);
        if a != 0 {
            out.push((a - 1, -1));
        }
        if b != 0 {
            out.push((b - 1, 1));
        }
    }
    Some(GroupWord::new(out).free_reduce())
}

/// Presentation of π₁ of the 2-fold branched cover on `x_i = m_1 m_i`, `2 ≤ i ≤ m`:
/// each relator `r` and its conjugate `m_1 r m_1⁻¹` rewritten over the transversal `{1, m_1}`.
pub fn branched_cover_presentation(p: &GroupPresentation) -> Result<GroupPresentation, CoverError> {
    let m = p.generators.len();
    let generators: Vec<String> = (2..=m).map(|i| format!("x{i}")).collect();
    let mut direct = Vec::new();
    let mut conjugated = Vec::new();
    for (j, r) in p.relators.iter().enumerate() {
        let r = r.free_reduce();
        direct.push(rewrite_pairs(&r).ok_or(CoverError::OddLength(j))?);
        let c = GroupWord::gen(0).concat(&r).concat(&GroupWord::new(vec![(0, -1)]));
        conjugated.push(rewrite_pairs(&c).ok_or(CoverError::OddLength(j))?);
    }
    direct.extend(conjugated);
    GroupPresentation::new(generators, direct)
}

/// Invariant factors of the abelianization; 0 marks a free summand.
pub fn abelianization(p: &GroupPresentation) -> Vec<BigInt> {
    let n = p.generators.len();
    if p.relators.is_empty() {
        return vec![BigInt::from(0); n];
    }
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| r.exponent_sums(n)).collect();
    cokernel_invariants(&IntMatrix::from_i64(&rows))
}

pub fn evaluate_word(word: &GroupWord, assignment: &[Mat2]) -> Result<Mat2, CoverError> {
    let mut acc = Mat2::identity();
    for &(g, e) in &word.letters {
        let m = assignment.get(g).ok_or_else(|| CoverError::Unassigned(format!("generator {g}")))?;
        let det = m.det();
        if (det - num_complex::Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(CoverError::Determinant { name: format!("generator {g}"), det: format!("{det}") });
        }
        acc = acc * if e < 0 { m.adjugate() } else { *m };
    }
    Ok(acc)
}

/// The eight relators over `x = m1m2, y = m1m3, z = m1m4, w = m1m5` as printed for T(5,6).
pub const PRINTED_T56_RELATORS: [&str; 8] = [
    "w^-1 x^-1 y z^-1 w x^-1 w z^-1 y x^-1 w^-1",
    "w^-1 x^-1 y z^-1 w y^-1 w z^-1 y x^-1 w^-1 x",
    "w^-1 x^-1 y z^-1 w z^-1 w z^-1 y x^-1 w^-1 y",
    "w^-1 x^-1 y z^-1 w z^-1 y x^-1 w^-1 z",
    "w x y^-1 z w^-1 x w^-1 z y^-1 x w",
    "w x y^-1 z w^-1 y w^-1 z y^-1 x w x^-1",
    "w x y^-1 z w^-1 z w^-1 z y^-1 x w y^-1",
    "w x y^-1 z w^-1 z y^-1 x w z^-1",
];

/// Printed T(5,6) cover relators on generators named `x2..x5`.
pub fn printed_t56_cover() -> GroupPresentation {
    let letters: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let relators = PRINTED_T56_RELATORS.iter().map(|t| GroupWord::parse(t, &letters).expect("fixture")).collect();
    GroupPresentation { generators: (2..=5).map(|i| format!("x{i}")).collect(), relators }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = GroupWord::new(vec![(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]);
        assert_eq!(w.free_reduce(), GroupWord::gen(2));
        assert!(GroupWord::new(vec![(0, 1), (0, 1)]).is_freely_reduced());
    }

    #[test]
    fn cyclic_group_abelianization() {
        let p = GroupPresentation::new(vec!["x".into()], vec![GroupWord::new(vec![(0, 1); 5])]).unwrap();
        assert_eq!(abelianization(&p), vec![BigInt::from(5)]);
    }

    #[test]
    fn empty_and_cancelling_words_evaluate_to_identity() {
        let a = Mat2::new(2.0.into(), 1.0.into(), 1.0.into(), 1.0.into());
        assert_eq!(evaluate_word(&GroupWord::default(), &[a]).unwrap(), Mat2::identity());
        let w = GroupWord::new(vec![(0, 1), (0, -1)]);
        assert!(evaluate_word(&w, &[a]).unwrap().distance(&Mat2::identity()) < 1e-14);
    }

    #[test]
    fn determinant_is_checked() {
        let a = Mat2::scalar(2.0.into());
        assert!(matches!(evaluate_word(&GroupWord::gen(0), &[a]), Err(CoverError::Determinant { .. })));
    }

    #[test]
    fn letter_form_round_trip() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let w = GroupWord::parse("x y^-1 x", &names).unwrap();
        assert_eq!(w.render(&names), "x y^-1 x");
    }
}
