//! Homology and K-theory of the groupoids attached to a pair of integer
//! matrices `(A, B)` through the self-similar action of `Z` on the paths of
//! the graph of `A`.
//!
//! All arithmetic is exact. The crate is organized bottom-up:
//!
//! - [`intmat`]: integer matrices, Smith/Hermite normal forms, kernels.
//! - [`abgroup`]: finitely generated abelian groups in invariant-factor form.
//! - [`dirlimit`]: stationary inductive limits and the shift map on them.
//! - [`selfsim`]: the graph of `A`, the action `κ` and its cocycle `φ`.
//! - [`groupoid`]: slice arithmetic and the structural classifier.
//! - [`invariants`]: homology, K-theory, cross-checks, comparison, realization.
//! - [`laws`]: seeded sweeps over the algebraic laws of one pair.
//! - [`cli`]: the JSON command-line surface behind the `kep` binary.

pub mod abgroup;
pub mod cli;
pub mod dirlimit;
pub mod error;
pub mod groupoid;
pub mod intmat;
pub mod invariants;
pub mod laws;
pub mod selfsim;

pub use abgroup::FGAbelianGroup;
pub use error::{Error, Result};
pub use groupoid::{classify, PropertyReport, Slice, SliceAlgebra};
pub use intmat::{IntMatrix, SnfDecomposition};
pub use selfsim::{Edge, EventuallyPeriodicPath, MatrixPair, Path};
