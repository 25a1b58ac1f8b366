//! Error type shared by the whole engine.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while validating inputs or running a
/// computation.  Variants carry enough of a witness to be actionable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input data broke a structural invariant (duplicate generator names,
    /// inhomogeneous relation, zero relation, degree mismatch, ...).
    Invalid(String),
    /// A symbolic determinant was requested above the configured dimension
    /// bound; the caller should fall back to randomized evaluation.
    DimensionExceeded { dim: usize, bound: usize },
    /// The differential does not descend to the quotient or does not square
    /// to zero.
    IllDefinedDifferential { witness: String, residue: String },
    /// Semi-free module failure reports, each with a witness.
    NotTriangular(String),
    DegreeMismatch(String),
    DifferentialNotSquareZero(String),
    NotMinimal(String),
    /// The degree window is too small to certify exactness of a resolution.
    CutoffTooSmall(String),
    /// A Hom-complex entry would need algebra degrees beyond the window.
    WindowExceeded { needed: usize, cutoff: usize },
    /// Structure-constant table failures.
    NotAssociative { i: usize, j: usize, k: usize },
    GradingViolation { i: usize, j: usize, k: usize },
    UnitViolation { i: usize },
    /// Candidate cohomology presentation disagrees at a degree.
    MismatchAt { degree: usize, expected: usize, found: usize },
    /// The Nakayama matrix failed its automorphism check; this signals an
    /// internal inconsistency and must not occur for valid Frobenius data.
    NotAutomorphism(String),
    /// An internal invariant failed (a bug, not a user error).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::DimensionExceeded { dim, bound } => {
                write!(f, "symbolic determinant dimension {dim} exceeds bound {bound}")
            }
            Error::IllDefinedDifferential { witness, residue } => {
                write!(f, "differential is ill-defined on {witness}: residue {residue}")
            }
            Error::NotTriangular(w) => write!(f, "differential is not strictly triangular: {w}"),
            Error::DegreeMismatch(w) => write!(f, "degree mismatch: {w}"),
            Error::DifferentialNotSquareZero(w) => {
                write!(f, "differential does not square to zero: {w}")
            }
            Error::NotMinimal(w) => write!(f, "resolution is not minimal: {w}"),
            Error::CutoffTooSmall(w) => write!(f, "degree cutoff too small: {w}"),
            Error::WindowExceeded { needed, cutoff } => {
                write!(f, "computation needs degree {needed} beyond the cutoff {cutoff}")
            }
            Error::NotAssociative { i, j, k } => {
                write!(f, "multiplication table is not associative at ({i},{j},{k})")
            }
            Error::GradingViolation { i, j, k } => {
                write!(f, "multiplication table violates the grading at ({i},{j},{k})")
            }
            Error::UnitViolation { i } => write!(f, "unit law fails on basis element {i}"),
            Error::MismatchAt { degree, expected, found } => write!(
                f,
                "candidate presentation disagrees at degree {degree}: candidate dim {found}, cohomology dim {expected}"
            ),
            Error::NotAutomorphism(w) => write!(f, "Nakayama matrix is not an automorphism: {w}"),
            Error::Internal(msg) => write!(f, "internal invariant failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
