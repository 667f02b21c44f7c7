use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid matching assignment: {}", .0.join("; "))]
    InvalidAssignment(Vec<String>),

    /// The input is outside what the engine is willing to handle (size
    /// guards, non-planar or diameter > 2 inputs, out-of-range parameters).
    #[error("refused: {0}")]
    Refused(String),

    /// Greedy extension met a vertex with nothing left to choose.
    #[error("greedy extension stuck at vertex {vertex}")]
    Stuck { vertex: String, history: Vec<Vec<u32>> },

    /// A runtime check that a correct implementation can never trip.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// A claimed residual bound failed inside a case procedure.
    #[error("internal consistency error: {message}")]
    CaseFailed { message: String, trace: Box<crate::mp2::ColoringTrace> },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status for the CLI: 1 for refusals and bad input, 2 for
    /// internal-consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) | Error::CaseFailed { .. } => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::SelfLoop(_) => "self_loop",
            Error::Parse(_) => "parse",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::Precondition(_) => "precondition",
            Error::InvalidAssignment(_) => "invalid_assignment",
            Error::Refused(_) => "refused",
            Error::Stuck { .. } => "stuck",
            Error::Consistency(_) | Error::CaseFailed { .. } => "internal_consistency",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
