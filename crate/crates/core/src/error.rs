use std::fmt;

/// Why an edge list failed to describe a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotATreeReason {
    Cycle,
    Disconnected,
    WrongEdgeCount { expected: usize, found: usize },
    Duplicate { u: usize, v: usize },
    SelfLoop { vertex: usize },
    LabelOutOfRange { label: usize },
    Empty,
}

impl fmt::Display for NotATreeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotATreeReason::Cycle => write!(f, "cycle"),
            NotATreeReason::Disconnected => write!(f, "disconnected"),
            NotATreeReason::WrongEdgeCount { expected, found } => {
                write!(f, "wrong edge count (expected {expected}, found {found})")
            }
            NotATreeReason::Duplicate { u, v } => write!(f, "duplicate edge {u}-{v}"),
            NotATreeReason::SelfLoop { vertex } => write!(f, "self-loop at {vertex}"),
            NotATreeReason::LabelOutOfRange { label } => write!(f, "label {label} out of range"),
            NotATreeReason::Empty => write!(f, "a tree needs at least one vertex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(NotATreeReason),
    #[error("vertex {vertex} is not a leaf")]
    NotALeaf { vertex: usize },
    #[error("{what} needs n >= {min}, got n = {n}")]
    DomainTooSmall { what: &'static str, n: usize, min: usize },
    #[error("no tabulated value for n = {n} (table covers 1..=19)")]
    OutOfTableRange { n: usize },
    #[error("an edge needs two distinct vertices, got {vertex} twice")]
    SameVertex { vertex: usize },
    #[error("crossing probabilities need n >= 4, got n = {n}")]
    TooFewVertices { n: usize },
    #[error("length {d} is outside 1..={max} for n = {n}")]
    LengthOutOfRange { n: usize, d: usize, max: usize },
    #[error("not a bijection onto positions 1..={n}")]
    NotBijective { n: usize },
    #[error("arrangement has {found} vertices but the tree has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("{what} is limited to n <= {max}, got n = {n}; use Monte Carlo sampling instead")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("no arrangement of this tree has D = {d}")]
    UnreachableD { d: u64 },
    #[error("C_max = 0 but observed ({observed}) and predicted ({predicted}) crossings differ")]
    DegenerateCmax { observed: String, predicted: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
