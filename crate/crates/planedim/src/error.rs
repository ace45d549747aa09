//! Error type shared by every module of the crate.

use crate::poset::{AlternatingCycle, Pair};

/// Everything that can go wrong while building or processing a poset.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An element id is not below the element count.
    #[error("element {0} is out of range (n = {1})")]
    OutOfRange(usize, usize),
    /// The cover edges contain a directed cycle.
    #[error("cover edges contain a directed cycle through {0}")]
    CycleDetected(usize),
    /// A cover edge is implied by the other edges.
    #[error("edge ({0}, {1}) is implied transitively and is not a cover")]
    RedundantCover(usize, usize),
    /// A pair that should be incomparable is not.
    #[error("pair ({}, {}) is not incomparable", .0.a, .0.b)]
    PairNotIncomparable(Pair),
    /// A pair set cannot be reversed by a single linear extension.
    #[error("pair set is not reversible (cycle of length {})", .0.pairs.len())]
    NotReversible(AlternatingCycle),
    /// The pair set is larger than the configured cap of an exact oracle.
    #[error("pair set of size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    /// An exact search ran out of nodes before closing the gap.
    #[error("search budget exceeded with bounds {lower}..={upper}")]
    BudgetExceeded { lower: usize, upper: usize },
    /// The rotation system does not list exactly the cover edges.
    #[error("rotation mismatch: {0}")]
    RotationMismatch(String),
    /// Face tracing violates Euler's formula on some component.
    #[error("rotation system is not planar on the component of {vertex}: V - E + F = {euler}")]
    NonPlanarRotation { vertex: usize, euler: i64 },
    /// The anchor is not placed on the designated outer face.
    #[error("anchor is not on the outer face")]
    AnchorNotOnOuterFace,
    /// A dart was queried at a vertex it does not leave.
    #[error("dart {0} does not leave vertex {1}")]
    DartNotAtVertex(usize, usize),
    /// A vertex sequence does not follow edges of the graph.
    #[error("path is not a walk in the cover graph: {0}")]
    PathNotInGraph(String),
    /// A closed walk is not a simple cycle.
    #[error("walk is not a simple cycle: {0}")]
    NotSimpleCycle(String),
    /// A boundary query was made at a vertex off the boundary.
    #[error("vertex {0} is not on the region boundary")]
    VertexNotOnBoundary(usize),
    /// A vertex expected to be minimal is not.
    #[error("element {0} is not minimal")]
    NotMinimal(usize),
    /// The poset is not connected.
    #[error("poset is not connected")]
    NotConnected,
    /// An element is not in the up-set of the root.
    #[error("element {0} is not above the root")]
    NotAboveX0(usize),
    /// An empty pair class was handed to an operation that needs pairs.
    #[error("empty pair class")]
    EmptyClass,
    /// A sequence of pairs is not regular.
    #[error("sequence is not regular")]
    NotRegular,
    /// A pair sequence is not an alternating cycle.
    #[error("sequence is not an alternating cycle")]
    NotAlternatingCycle,
    /// Two elements are not in the required left-of relation.
    #[error("{0} is not left of {1}")]
    NotLeftOf(usize, usize),
    /// A merged cover class is not reversible.
    #[error("merged class is not reversible (cycle of length {})", .0.pairs.len())]
    MergeUnsound(AlternatingCycle),
    /// A colour class of the final colouring is not reversible.
    #[error("colour class is not reversible (cycle of length {})", .0.pairs.len())]
    ColoringNotReversible(AlternatingCycle),
    /// A generator received an unsupported parameter.
    #[error("bad parameter: {0}")]
    BadParameter(String),
    /// Input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A realizer came out larger than the size bound allows.
    #[error("bound violated: {0}")]
    BoundViolated(String),
    /// An internal invariant failed. This always signals a bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Name of the variant, used as the machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfRange(..) => "OutOfRange",
            Error::CycleDetected(_) => "CycleDetected",
            Error::RedundantCover(..) => "RedundantCover",
            Error::PairNotIncomparable(_) => "PairNotIncomparable",
            Error::NotReversible(_) => "NotReversible",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::RotationMismatch(_) => "RotationMismatch",
            Error::NonPlanarRotation { .. } => "NonPlanarRotation",
            Error::AnchorNotOnOuterFace => "AnchorNotOnOuterFace",
            Error::DartNotAtVertex(..) => "DartNotAtVertex",
            Error::PathNotInGraph(_) => "PathNotInGraph",
            Error::NotSimpleCycle(_) => "NotSimpleCycle",
            Error::VertexNotOnBoundary(_) => "VertexNotOnBoundary",
            Error::NotMinimal(_) => "NotMinimal",
            Error::NotConnected => "NotConnected",
            Error::NotAboveX0(_) => "NotAboveX0",
            Error::EmptyClass => "EmptyClass",
            Error::NotRegular => "NotRegular",
            Error::NotAlternatingCycle => "NotAlternatingCycle",
            Error::NotLeftOf(..) => "NotLeftOf",
            Error::MergeUnsound(_) => "MergeUnsound",
            Error::ColoringNotReversible(_) => "ColoringNotReversible",
            Error::BadParameter(_) => "BadParameter",
            Error::Parse(_) => "Parse",
            Error::BoundViolated(_) => "BoundViolated",
            Error::InvariantViolation(_) => "InvariantViolation",
        }
    }

    /// True for errors that can only come from a bug, never from bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InvariantViolation(_) | Error::BoundViolated(_) | Error::MergeUnsound(_) | Error::ColoringNotReversible(_)
        )
    }
}

/// Shorthand result type.
pub type Result<T> = std::result::Result<T, Error>;
