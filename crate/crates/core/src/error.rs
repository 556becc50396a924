use core::fmt;

/// Errors reported by the core operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The universe size exceeds what the operation can enumerate.
    UniverseTooLarge { n: u32, limit: u32 },
    /// A pattern or operation parameter is outside its legal range.
    BadParameter(&'static str),
    /// The operation requires the empty set to be a member of the family.
    EmptySetMissing,
    /// The operation requires a diamond-free family.
    NotDiamondFree,
    /// Dimensions are inconsistent (e.g. more vertices than ground elements).
    BadDimensions(&'static str),
    /// The graph has too few vertices for the operation.
    TooFewVertices { v: usize, needed: usize },
    /// The graph has too many vertices for exhaustive enumeration.
    TooManyVertices { v: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UniverseTooLarge { n, limit } => {
                write!(f, "universe size {n} exceeds limit {limit}")
            }
            Error::BadParameter(what) => write!(f, "bad parameter: {what}"),
            Error::EmptySetMissing => write!(f, "family does not contain the empty set"),
            Error::NotDiamondFree => write!(f, "family is not diamond-free"),
            Error::BadDimensions(what) => write!(f, "bad dimensions: {what}"),
            Error::TooFewVertices { v, needed } => {
                write!(f, "graph has {v} vertices, operation needs at least {needed}")
            }
            Error::TooManyVertices { v, limit } => {
                write!(f, "graph has {v} vertices, enumeration limit is {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}
