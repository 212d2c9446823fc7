//! Exact linear algebra over ℚ and 𝔽_p.

mod elimination;
mod field;
mod sparse;

pub use elimination::{kernel_basis, nullity, rank, solve};
pub use field::{Field, FieldError, Scalar};
pub use sparse::{compress, normalize, Coords, DenseVector, SparseMatrix};
pub(crate) use sparse::axpy_dense;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("scalar over {found} used where {expected} was expected")]
    FieldMismatch { expected: Field, found: Field },
    #[error("index {index} out of bounds for length {len}")]
    IndexOutOfBounds { index: usize, len: usize },
}
