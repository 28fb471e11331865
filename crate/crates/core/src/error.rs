use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational {0:?}")]
    Rational(String),
    #[error("malformed Gaussian rational {0:?}")]
    Gaussian(String),
    #[error("malformed word {0:?}: {1}")]
    Word(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row}, {col}) = {value} is not an integer")]
    NonInteger { row: usize, col: usize, value: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("alphabet rank must be at least 1")]
    EmptyAlphabet,
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("linear part must be an integer matrix: {0}")]
    NonIntegerLinear(ExactError),
    #[error("linear part has determinant {0}, expected +1 or -1")]
    NotUnimodular(String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("translation entry {0} is not reduced into [0, 1)")]
    NotReduced(String),
    #[error("entry {0} of the complex linear part is not a Gaussian integer")]
    NonGaussianInteger(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchottkyError {
    #[error("matrix does not preserve the quadratic form: {0}")]
    FormNotPreserved(String),
    #[error("determinant is {0}, expected 1")]
    WrongDeterminant(String),
    #[error("matrix swaps the sheets of the hyperboloid (top-left entry {0})")]
    WrongSheet(String),
    #[error("induced projective map is inconsistent at {0}")]
    InconsistentInterpolation(String),
    #[error("generator {0} is not loxodromic: {1}")]
    NotLoxodromic(usize, String),
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("trace {0} is not real; finite order cannot be decided in Q")]
    UnsupportedTrace(String),
    #[error("malformed ping-pong table: {0}")]
    MalformedTable(String),
    #[error("ping-pong proposer exhausted its budget for power {0}")]
    ProposerExhausted(u32),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("ping-pong certificate failed re-verification: {0}")]
    PingPong(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid Hopf datum: {0}")]
    HopfDatum(String),
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is {0}, expected 1")]
    WrongDeterminant(String),
    #[error("not the matrix of a unit quaternion: {0}")]
    NotUnitQuaternion(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Schottky(#[from] SchottkyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
