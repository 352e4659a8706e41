use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Every violated parameter constraint, in a stable order.
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParameters(Vec<String>),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("sigma is undefined on I_0: index {index} < p^{level}")]
    SigmaUndefined { index: u64, level: u32 },

    #[error("index {index} is out of range for a block of size {size}")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("weight {weight} does not belong to the block")]
    WeightNotInBlock { weight: u64 },

    #[error("block size {size} is not of the form a*p^k with 2 <= a <= p (p = {p})")]
    NotIntervalShaped { size: u64, p: u64 },

    /// A recursion step produced the same index twice. Every multiplicity in
    /// these blocks is 0 or 1, so this is an implementation bug.
    #[error("multiplicity > 1 at index {index} while building {context}")]
    NotMultiplicityFree { index: u64, context: String },

    #[error("linkage component {weights:?} matches no known block shape")]
    Unclassified { weights: Vec<u64> },
}
