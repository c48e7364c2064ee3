use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertex {vertex} is not on face {face}")]
    NotOnFace { face: usize, vertex: Vertex },
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(Vertex, Vertex),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("girth5 reconstruction failed its self-check: {0}")]
    ReconstructionUnavailable(String),
    #[error("vertex {0} is not colored")]
    UncoloredVertex(Vertex),
    #[error("invalid list assignment: {0}")]
    InvalidLists(String),
    #[error("graph has girth {0}, at least 6 is required")]
    GirthTooSmall(usize),
    #[error("precondition violated ({stage}): {detail}")]
    PreconditionViolated { stage: &'static str, detail: String },
    #[error("assumption violated ({stage}): {witness}")]
    AssumptionViolated { stage: &'static str, witness: String },
    #[error("list of vertex {0} has no admissible color")]
    ListTooSmall(Vertex),
    #[error("coloring rules deadlocked with uncolored vertices {0:?}")]
    RuleDeadlock(Vec<Vertex>),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn assumption(stage: &'static str, witness: impl Into<String>) -> Self {
        Error::AssumptionViolated {
            stage,
            witness: witness.into(),
        }
    }

    pub(crate) fn precondition(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::PreconditionViolated {
            stage,
            detail: detail.into(),
        }
    }
}
