use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponent vector over an ordered variable list.
///
/// The derived `Ord` is lexicographic with the first variable most
/// significant; use [`MonomialOrder`] for anything order-sensitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term order used by Groebner computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                // last variable with differing exponent: smaller exponent wins
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_matches_textbook_examples() {
        let o = MonomialOrder::GrevLex;
        // x^2 y z vs x y^3: degree 4 both; z exponent 1 vs 0 -> x y^3 larger
        let a = Monomial(vec![2, 1, 1]);
        let b = Monomial(vec![1, 3, 0]);
        assert_eq!(o.cmp(&a, &b), Ordering::Less);
        assert_eq!(o.cmp(&Monomial(vec![1, 0, 0]), &Monomial(vec![0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial(vec![0, 0, 2]), &Monomial(vec![1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_prefers_first_variable() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&Monomial(vec![1, 0]), &Monomial(vec![0, 5])), Ordering::Greater);
    }

    #[test]
    fn lcm_and_division() {
        let a = Monomial(vec![2, 0, 1]);
        let b = Monomial(vec![1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l, Monomial(vec![2, 3, 1]));
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(a.quotient_of(&l), Monomial(vec![0, 3, 0]));
        assert!(!a.is_coprime(&Monomial(vec![1, 0, 0])));
        assert!(a.is_coprime(&Monomial(vec![0, 4, 0])));
    }
}
