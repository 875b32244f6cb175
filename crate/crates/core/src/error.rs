use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is not part of the ground set")]
    Domain(String),

    #[error("removing every domain element leaves an empty mapping")]
    EmptyDomain,

    #[error("{what} has {size} elements, above the enumeration cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),

    #[error("not a Hall partition of the mapping: {0}")]
    InvalidPartition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
