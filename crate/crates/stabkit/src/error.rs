use thiserror::Error;

/// Errors produced by stabkit operations.
///
/// The three variants map onto the CLI exit-code contract: `Parse` → 2,
/// `Input` → 3, `Resource` → 4.
#[derive(Debug, Error)]
pub enum Error {
    /// The input file or text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A precondition on the operation's arguments is violated
    /// (unknown vertex, disconnected graph, bipartite graph, bad vector, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration or search exceeded its configured limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Input(_) => 3,
            Error::Resource(_) => 4,
        }
    }
}
