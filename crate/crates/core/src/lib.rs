//! Exact computation of secondary Hochschild cohomology
//! `H^n((A, B, ε); M)`, deformations of B-algebra structures, and the
//! cyclic objects `K(G, 2)` and `₂K(B)`.
//!
//! All arithmetic is exact over ℚ or a prime field 𝔽_p.

pub mod algebra;
pub mod complex;
pub mod deformation;
pub mod exec;
pub mod linalg;
pub mod simplicial;

pub use exec::Strategy;
pub use linalg::{DenseVector, Field, Scalar, SparseMatrix};
