use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FenceError {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Valid input the operation deliberately does not handle.
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// A polygon or fence loop is degenerate or self-intersecting.
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error(
        "grid of {cells} cells exceeds the enumeration cap of {cap}; use anneal_min_free_perimeter"
    )]
    Capacity { cells: usize, cap: usize },
}

pub type Result<T, E = FenceError> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(FenceError::Domain(msg.into()))
}
