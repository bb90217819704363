use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A face or degeneracy index does not exist at the stated level.
    MalformedWord { op: &'static str, index: usize, level: usize },
    /// A simplex refers to a generator that is not part of the ambient set.
    ForeignSimplex(String),
    /// A category, functor, or model table fails its validation.
    InvalidTable(String),
    /// A pushout check was handed masks that violate the stated inclusions.
    InclusionViolation(String),
    /// A verification routine was handed data violating its hypotheses.
    HypothesisViolation(String),
    /// A model is missing structure it was asserted to have.
    ModelDefect(String),
    /// An enumeration exceeded the configured generator ceiling.
    ResourceCeiling { need: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedWord { op, index, level } => {
                write!(f, "operator {op}_{index} is not applicable at level {level}")
            }
            Error::ForeignSimplex(s) => write!(f, "foreign simplex: {s}"),
            Error::InvalidTable(s) => write!(f, "invalid table: {s}"),
            Error::InclusionViolation(s) => write!(f, "inclusion violation: {s}"),
            Error::HypothesisViolation(s) => write!(f, "hypothesis violation: {s}"),
            Error::ModelDefect(s) => write!(f, "model defect: {s}"),
            Error::ResourceCeiling { need, limit } => {
                write!(f, "resource ceiling exceeded: need {need} generators, limit {limit}")
            }
        }
    }
}
