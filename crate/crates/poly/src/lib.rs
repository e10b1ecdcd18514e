//! Exact sparse polynomials over the rationals with the elimination tools a
//! small polynomial-system solver needs: Groebner bases (Buchberger with the
//! Gebauer-Moeller criteria), Sylvester resultants, Aberth root finding, exact
//! arithmetic in quadratic fields, and Smith normal form over the integers.

pub mod error;
pub mod groebner;
pub mod monomial;
pub mod multipoly;
mod parse;
pub mod quadratic;
pub mod resultant;
pub mod roots;
pub mod snf;
pub mod univariate;

pub use error::PolyError;
pub use groebner::{buchberger, ideal_contains, radical_contains, GroebnerBasis, GroebnerConfig, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use multipoly::{int, rat, EvalRing, MultiPoly, Rational};
pub use quadratic::QuadNumber;
pub use resultant::resultant;
pub use roots::{uni_roots, ComplexRootSet, Root};
pub use snf::{smith_normal_form, IntMatrix};
pub use univariate::UniPoly;
