use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::posynomial::Violation;

/// Errors raised by the library.
///
/// Solver outcomes such as infeasibility are not errors; they are reported through
/// [`crate::Status`] and [`crate::DualStatus`].
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A variable value was zero, negative, NaN or infinite.
    NonPositiveVariable { index: usize, value: f64 },
    /// A point, weight vector or exponent row has the wrong length.
    ArityMismatch { expected: usize, found: usize },
    /// A constraint bound `b_i` was not strictly positive.
    NonPositiveBound { constraint: usize, bound: f64 },
    /// The problem breaks one or more structural invariants.
    InvalidProblem(Vec<Violation>),
    /// A dual weight was negative or not finite.
    NegativeWeight { index: usize, value: f64 },
    /// The candidate count of a set is outside `1..=8`.
    CandidateCount { set: String, count: usize },
    /// A bit pattern is not admitted by its candidate set.
    InvalidAssignment { set: String, bits: String },
    /// A slot refers to a candidate set that does not exist.
    UnknownSet(String),
    /// A candidate set is declared but never referenced.
    UnusedSet(String),
    /// A set is used in a slot that does not match its declared role.
    RoleMismatch { set: String },
    /// Two candidate sets share a name.
    DuplicateSet(String),
    /// A coefficient set holds a non-positive value or an exponent set a non-finite one.
    InvalidCandidate { set: String, position: usize, value: f64 },
    /// The choice template is malformed (arity, bounds, empty posynomial).
    InvalidTemplate(String),
    /// A resolved coefficient slot is not strictly positive.
    NonPositiveCoefficient { value: f64 },
    /// The number of assignment combinations exceeds the configured cap.
    TooManyCombinations { count: u128, cap: u64 },
    /// The log-linear recovery system is inconsistent beyond tolerance.
    Reconstruction { residual: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveVariable { index, value } => {
                write!(f, "variable {index} must be positive and finite, got {value}")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::NonPositiveBound { constraint, bound } => {
                write!(f, "constraint {constraint} has non-positive bound {bound}")
            }
            Error::InvalidProblem(violations) => {
                write!(f, "invalid problem:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::NegativeWeight { index, value } => {
                write!(f, "dual weight {index} must be nonnegative, got {value}")
            }
            Error::CandidateCount { set, count } => {
                write!(f, "candidate set `{set}` has {count} values, expected 1 to 8")
            }
            Error::InvalidAssignment { set, bits } => {
                write!(f, "bit pattern {bits} is not valid for candidate set `{set}`")
            }
            Error::UnknownSet(name) => write!(f, "candidate set `{name}` is not defined"),
            Error::UnusedSet(name) => write!(f, "candidate set `{name}` is never referenced"),
            Error::RoleMismatch { set } => {
                write!(f, "candidate set `{set}` is used in a slot that does not match its role")
            }
            Error::DuplicateSet(name) => write!(f, "candidate set `{name}` is defined twice"),
            Error::InvalidCandidate { set, position, value } => {
                write!(f, "candidate {position} of set `{set}` is invalid: {value}")
            }
            Error::InvalidTemplate(msg) => write!(f, "invalid template: {msg}"),
            Error::NonPositiveCoefficient { value } => {
                write!(f, "resolved coefficient {value} is not positive")
            }
            Error::TooManyCombinations { count, cap } => {
                write!(f, "{count} assignment combinations exceed the cap of {cap}")
            }
            Error::Reconstruction { residual } => {
                write!(f, "primal recovery system is inconsistent (residual {residual:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
