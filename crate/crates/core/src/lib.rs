//! Algebraic sets of fundamental relations for braid-closure knots, ghost
//! characters, and SL(2,C) representations of the double branched cover.

pub mod cover;
pub mod diagram;
pub mod error;
pub mod f2;
pub mod mat2;
pub mod repvar;
pub mod slice;

pub use diagram::{braid_closure, parse_braid, parse_knot, torus_braid, BraidWord, KnotDiagram, WirtingerTriple};
pub use error::{CoverError, DiagramError, F2Error, RepError};
