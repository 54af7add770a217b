use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("complex is not normal: link of {0} is not strongly connected")]
    NotNormal(String),
    #[error("complex is not flag: {0} spans a clique but is not a face")]
    NotFlag(String),
    #[error("anchor {anchor} does not realize the vertex distance to the target")]
    BadAnchor { anchor: usize },
    #[error("non-revisiting property failed at recursion depth {depth}: triple {triple:?}")]
    NotNonRevisiting { depth: usize, triple: (usize, usize, usize) },
    #[error("size limit exceeded: {what} = {value} > {cap}")]
    SizeLimit { what: &'static str, value: usize, cap: usize },
    #[error("search budget of {budget} exhausted")]
    Budget { budget: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
        if value > cap {
            Err(Error::SizeLimit { what, value, cap })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
