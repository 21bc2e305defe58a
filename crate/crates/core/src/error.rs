use thiserror::Error;

/// Errors across parsing, enumeration, and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text failed to parse. `offset` is a byte offset into the input
    /// when one is known.
    #[error("malformed input at byte {}: {msg}", offset.map(|o| o.to_string()).unwrap_or_else(|| "?".into()))]
    Malformed { msg: String, offset: Option<usize> },

    /// An edge label does not appear exactly twice across all crossing slots.
    #[error("edge label {label} appears {count} times (expected 2)")]
    DuplicateLabel { label: usize, count: usize },

    /// The rotation system is not planar: face count differs from n + 2.
    #[error("non-planar or inconsistent rotation system: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },

    /// Input is a link with more than one component; only knots are handled.
    #[error("links unsupported: input has {components} components")]
    LinkUnsupported { components: usize },

    /// A Gauss code that cannot be realized as a planar knot diagram.
    #[error("non-realizable Gauss code: {0}")]
    NonRealizable(String),

    /// Enumeration exceeded the configured state cap.
    #[error("state cap of {cap} exceeded")]
    StateCapExceeded { cap: usize },

    /// No eligible marked edge exists (pathological diagram).
    #[error("diagram has no eligible marked edge")]
    NoEligibleEdge,

    /// A locked grading-table contract failed (non-integer grading,
    /// f-value outside {1/4, -1/4}, asymmetric state sum, ...).
    #[error("grading contract violated: {0}")]
    GradingContract(String),

    /// An internal structural invariant failed; indicates a bug upstream,
    /// not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn malformed(msg: impl Into<String>, offset: Option<usize>) -> Self {
        Error::Malformed {
            msg: msg.into(),
            offset,
        }
    }
}
