use thiserror::Error;

/// Errors surfaced by graph surgery, cut machinery, cycle search and the
/// long-cycle engine.
///
/// `Internal*` variants indicate a broken invariant that the theory says
/// cannot happen on valid inputs; they are bugs, not user errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    UnknownVertex(u32),
    #[error("edge {0} does not exist")]
    UnknownEdge(u32),
    #[error("loops are not allowed (edge {0} would join a vertex to itself)")]
    LoopRejected(u32),
    #[error("contraction piece is not connected")]
    DisconnectedPiece,
    #[error("contraction pieces overlap")]
    OverlappingPieces,
    #[error("suppression would merge two parallel edges into a loop")]
    ParallelRemainder,
    #[error("suppression would create a loop")]
    LoopWouldForm,
    #[error("insertion requires two distinct edges")]
    SameEdge,
    #[error("edge {0} is not an edge of the derived graph")]
    ForeignEdge(u32),
    #[error("no vertex side with a 3-edge boundary qualifies (internal bug)")]
    NoQualifyingSide,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("detour-cycle hypothesis violated: neither branch suppression admits the cycle")]
    HypothesisViolated,
    #[error("no candidate cycle met its guaranteed bound: {0}")]
    InternalBoundMiss(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("inequality hypothesis not satisfied")]
    HypothesisFailed,
    #[error("vertex degree too small to expand")]
    DegreeTooSmall,
    #[error("cubic graphs have even order, got {0}")]
    OddOrder(usize),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Assert a theory-guaranteed invariant at runtime, producing
/// `Error::Internal` with context when it fails.
macro_rules! ensure_internal {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(crate::error::Error::Internal(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure_internal;
