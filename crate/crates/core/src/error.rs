use ghostchar_poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed knot spec: {0}")]
    Malformed(String),
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("braid word is empty")]
    EmptyWord,
    #[error("braid letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("torus parameters ({0},{1}) are not coprime; the closure is a link")]
    NotCoprime(usize, usize),
    #[error("braid closure has {0} components; only knots are supported")]
    MultiComponent(usize),
    #[error("left-edge strand {0} reaches the right edge without passing under any crossing")]
    PassThroughStrand(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum F2Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("diagram has no braid layout")]
    NotBraidClosure,
    #[error("lifted point violates a fundamental relation (residual {residual:e} at {relation})")]
    LiftResidual { residual: f64, relation: String },
    #[error("solution verification failed: {0}")]
    Verification(String),
    #[error("cyclic dependency among arc variables")]
    Cyclic,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverError {
    #[error("generator {0} has no defining relator")]
    NoDefiningRelator(String),
    #[error("odd-length word while rewriting relator {0}")]
    OddLength(usize),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("matrix for generator {name} has determinant {det} (expected 1)")]
    Determinant { name: String, det: String },
    #[error("no matrix assigned to generator {0}")]
    Unassigned(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("point has no coordinates for pair ({0},{1})")]
    MissingCoordinate(usize, usize),
    #[error("target trace {0} is not rational or quadratic over the rationals")]
    NonAlgebraicTarget(String),
}
