use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    GroupParameters(String),

    #[error("element {element} does not belong to {group}")]
    ForeignElement { element: String, group: String },

    #[error("operands belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("group of order {order} exceeds the search bound {bound}")]
    OrderBound { order: usize, bound: usize },

    #[error("subgroup is not dihedral: {0}")]
    NotDihedral(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent signature: {0}")]
    InconsistentSignature(String),

    #[error("subgroup has index {found}, expected {expected}")]
    SubgroupIndex { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
