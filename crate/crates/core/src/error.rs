use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("enumeration exceeded the cap of {cap} faces")]
    EnumerationOverflow { cap: usize },

    #[error("boundary matrix with {columns} columns exceeds the limit of {limit}")]
    MatrixTooLarge { columns: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pairing matrix is singular; no unique solution")]
    Singular,

    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),

    #[error("lattice is not tileable: {0}")]
    NotTileable(String),

    #[error("no tile template found: {0}")]
    NoTemplate(String),

    #[error("graph minus the separator is not a forest")]
    NotAForest,

    #[error("certificate rejected: {0}")]
    RejectedCertificate(String),
}
