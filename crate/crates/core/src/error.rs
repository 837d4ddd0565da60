//! Error types for the library, grouped by subsystem.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("non-associative product at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit fails to act as identity on the {side} at basis index {index}")]
    UnitFails { side: &'static str, index: usize },
    #[error("structure constant table has wrong shape: {0}")]
    BadShape(String),
    #[error("algebras live over different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("path algebra exceeds the length cap {cap}; not finite-dimensional up to the cap")]
    InfiniteDimensional { cap: usize },
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("bad quiver: {0}")]
    BadQuiver(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("module law fails at basis pair ({0}, {1})")]
    LawFails(usize, usize),
    #[error("left module law fails at basis pair ({0}, {1})")]
    LeftLawFails(usize, usize),
    #[error("unit does not act as the identity")]
    UnitFails,
    #[error("left and right actions do not commute at basis pair ({0}, {1})")]
    ActionsDontCommute(usize, usize),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("map does not intertwine the action of basis element {0}")]
    NotAModuleMap(usize),
    #[error("matrix shape does not match module dimensions: {0}")]
    BadShape(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d \u{2218} d != 0 between degrees {0} and {1}")]
    DifferentialSquare(i32, i32),
    #[error("differential in degree {0} is not a module map")]
    DifferentialNotMap(i32),
    #[error("chain map does not commute with differentials at degree {0}")]
    NotChainMap(i32),
    #[error("complexes are over different algebras")]
    AlgebraMismatch,
    #[error("degree {degree} is outside the certified window [{lo}, {hi}]")]
    BoundTooSmall { degree: i32, lo: i32, hi: i32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("idempotents unavailable: field prime {p} must exceed the algebra dimension {dim}")]
    IdempotentsUnavailable { p: u64, dim: usize },
    #[error("idempotent splitting search exhausted after {tries} seeded attempts")]
    SplitSearchExhausted { tries: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangularError {
    #[error("bimodule is invalid: {0}")]
    InvalidBimodule(String),
    #[error("diagonal algebras must have dimension at least 1")]
    ZeroAlgebra,
    #[error("the module does not restrict to a triple: {0}")]
    NotATriple(String),
    #[error("selector {0} cannot be applied to this object")]
    SelectorMismatch(&'static str),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("hypothesis refuted: {0}")]
    HypothesisRefuted(String),
    #[error("Hom_R(M,T) is not concentrated in degree 0: {0}")]
    NotDiscreteTarget(String),
    #[error("no bimodule projective resolution terminates within degree bound {0}")]
    NotSmoothWithinBound(usize),
    #[error("interface map is not unital/idempotent: {0}")]
    BadInterface(String),
}

/// Convenience umbrella for callers that mix subsystems (the CLI does).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Triangular(#[from] TriangularError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("instance file error at {path}: {message}")]
    Instance { path: String, message: String },
}
