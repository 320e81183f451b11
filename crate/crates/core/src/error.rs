use thiserror::Error;

use crate::matrix::Matrix;
use crate::report::Witness;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square with dimension >= 1")]
    NotSquare,

    #[error("{0} is degenerate")]
    Degenerate(String),

    #[error("{0}")]
    InvalidTensor(String),

    #[error("endomorphism does not square to the identity")]
    NotInvolution,

    #[error("involution is trivial (+-identity)")]
    Trivial,

    #[error("Jacobi identity fails at (i,j,k)=({i},{j},{k}), component {l}: {value}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        value: crate::Rational,
    },

    #[error("subspace {which} is not isotropic: {witness}")]
    NotIsotropic { which: String, witness: Box<Witness> },

    #[error("subspaces are not complementary")]
    NotComplementary,

    #[error("axiom {operator} fails: {witness}")]
    AxiomFailure {
        operator: String,
        witness: Box<Witness>,
        defect: Box<Matrix>,
    },

    #[error("supplied J~ is not compatible: {0}")]
    NotCompatible(Box<Witness>),

    #[error("form {name} is not closed: {witness}")]
    NotClosed { name: String, witness: Box<Witness> },

    #[error("hypothesis {which} fails: {witness}")]
    HypothesisFailure { which: String, witness: Box<Witness> },

    #[error("structure is not integrable")]
    NotIntegrable,

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown name {0:?}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
