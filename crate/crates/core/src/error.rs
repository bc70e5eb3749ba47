use thiserror::Error;

use crate::field::Triple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("TieError at triple {0}")]
    Tie(Triple),
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("point lies on a ray of line {0}")]
    OnBoundary(usize),
    #[error("no (1,1,1) cell found for triple {0}")]
    NotFound(Triple),
    #[error("two distinct (1,1,1) covectors found for triple {0}")]
    Ambiguous(Triple),
    #[error("lines {0} and {1} have the same apex x-coordinate")]
    TiedX(usize, usize),
    #[error("lines {0} and {1} are not adjacent with {0} on the left")]
    NotAdjacent(usize, usize),
    #[error("apex of line {0} lies on a region boundary")]
    Boundary(usize),
    #[error("apex of line {0} satisfies more than one region predicate")]
    RegionOverlap(usize),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("shape mismatch: 3x{0} vs 3x{1}")]
    ShapeMismatch(usize, usize),
    #[error("point is not a member of the set")]
    NotInSet,
    #[error("tableau of the triple through red line {0} is not (j, i, k)")]
    PatternMismatch(usize),
    #[error("no admissible epsilon moves line {0} past line {1} without extra flips")]
    NotSwappable(usize, usize),
    #[error("vertex {0} has |<f, v>| > 1")]
    SlabViolation(String),
    #[error("swap of lines {0} and {1} is {2}")]
    Unverified(usize, usize, String),
    #[error("target is not a permutation of 1..={0}")]
    BadTarget(usize),
    #[error("final matching field differs from the diagonal matching field")]
    EndpointMismatch,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
