use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested computation exceeds a memory or work budget.
    #[error("resource error: {0}")]
    Resource(String),
    /// A lemma's hypothesis is violated by the supplied instance.
    #[error("hypothesis error: {0}")]
    Hypothesis(String),
    /// A sweep or CLI configuration is malformed.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
