use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The document is not valid JSON or does not follow the gluing-table grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// The gluing data is syntactically fine but describes an inconsistent complex.
    #[error("inconsistent triangulation: {0}")]
    Consistency(String),

    /// A vertex link is not a closed surface.
    #[error("vertex class {vertex_class} has a link with {boundary_edges} boundary edges")]
    NonClosedLink {
        vertex_class: usize,
        boundary_edges: usize,
    },

    /// Non-finite arithmetic or a solver that failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An internal invariant was violated (for example reconstruction on a
    /// triangulation that is not properly glued).
    #[error("logic error: {0}")]
    Logic(String),

    /// A metric does not match the edge classes of the triangulation.
    #[error("metric mismatch: {0}")]
    MetricMismatch(String),
}

impl Error {
    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}

/// Returns `value` if it is finite, otherwise a numeric error naming `what`.
pub(crate) fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::numeric(format!("{what} evaluated to {value}")))
    }
}
