use thiserror::Error;

use crate::builder::StepError;
use crate::sets::SetMask;
use crate::shattering::ExtremalityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe size {0} outside 1..=63")]
    UniverseSize(usize),

    #[error("element {element} outside universe [1..{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("set {set} uses elements outside universe [1..{n}]")]
    SetOutOfUniverse { set: SetMask, n: usize },

    #[error("duplicate member {0}")]
    DuplicateMember(SetMask),

    #[error("{0} is not a member of the system")]
    NotAMember(SetMask),

    #[error("{0} is not a vertex of the graph")]
    NotAVertex(SetMask),

    #[error("operation requires a nonempty set system")]
    EmptySystem,

    #[error("support has {size} elements, limit is {limit}")]
    SupportTooLarge { size: usize, limit: usize },

    #[error("universe size {n} exceeds the limit {limit} for this operation")]
    UniverseTooLargeFor { n: usize, limit: usize },

    #[error("malformed interval: lower {lower} is not a subset of upper {upper}")]
    MalformedInterval { lower: SetMask, upper: SetMask },

    #[error("edges carry different labels ({0} and {1})")]
    LabelMismatch(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("step {index}: {source}")]
    Replay { index: usize, source: StepError },

    #[error(transparent)]
    Step(#[from] StepError),

    #[error("system does not contain the empty set; bit-flip onto a member first")]
    MissingEmptySet,

    #[error(
        "system is not extremal with VC dimension at most 2 \
         (|F|={}, |Sh|={}, |st|={}, VC={vc_dimension})",
        report.size, report.shattered, report.strongly_shattered
    )]
    NotExtremalVc2 {
        report: ExtremalityReport,
        vc_dimension: usize,
    },

    #[error("cannot remove the last member of a single-member system")]
    LastMember,

    /// A computed invariant contradicted a proven identity. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
