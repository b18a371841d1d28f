//! Quaternion algebras (a, b) over Q with basis 1, i, j, ij, and their orders.

mod algebra;
mod order;
mod search;

pub use algebra::{QuatAlgebra, QuatElt};
pub use order::{OrderDoc, QuatOrder};
pub use search::{atkin_lehner_group, box_elements, find_trace_zero, DEFAULT_HEIGHT};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("order invariant violated: {0}")]
    Invariant(String),
    #[error("no representative found for divisor {0} within the search bound")]
    NotFound(u64),
    #[error("bad order document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, QuatError>;
