//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("modulus is not a monic irreducible of the requested degree over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("unsupported extension degree {0} (supported: 2..=4)")]
    BadExtensionDegree(usize),
    #[error("contraction degree {d} exceeds dual form degree {e}")]
    DegreeTooLarge { d: usize, e: usize },
    #[error("inhomogeneous polynomial where a form was required")]
    Inhomogeneous,
    #[error("artinian test inconclusive up to degree {probe_bound} (H = {h_at_bound})")]
    ArtinianInconclusive { probe_bound: usize, h_at_bound: usize },
    #[error("ideal is not artinian")]
    NotArtinian,
    #[error("saturation not stabilized at power bound {0}")]
    NotStabilized(usize),
    #[error("no compressed instance after {tries} tries (last h-vector {last:?})")]
    NotCompressedAfterRetries { tries: usize, last: Vec<usize> },
    #[error("dual forms are linearly dependent")]
    DependentDualForms,
    #[error("ideal carries no inverse-system representation")]
    RequiresInverseSystem,
    #[error("pfaffian {index} is inhomogeneous; the degree pattern is inconsistent")]
    InhomogeneousPfaffian { index: usize },
    #[error("scheme does not split over extensions of degree <= {0}")]
    NotSplit(usize),
    #[error("base locus is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no suitable split line found after {0} retries")]
    LineNotSplit(usize),
    #[error("wrong h-vector: expected {expected:?}, got {got:?}")]
    WrongHVector { expected: Vec<usize>, got: Vec<usize> },
    #[error("no linear syzygies among the generators")]
    NoLinearSyzygies,
    #[error("matrix does not match the required block structure: {0}")]
    StructureMismatch(String),
    #[error("pencil is not in the normal-form orbit: {0}")]
    NotInNormalFormOrbit(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("base point found at {0}")]
    BasePointFound(String),
    #[error("cannot parse scalar: {0}")]
    ScalarParse(String),
    #[error("parse error at {line}:{col}: {msg}")]
    PolyParse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}
