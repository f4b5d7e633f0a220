//! Affine nilCoxeter algebra of the affine symmetric group, Pieri operators
//! `U_j` and `D_J`, noncommutative k-Schur functions and strong Schur
//! functions.

pub mod affine_perm;
mod cache;
pub mod error;
pub mod fomin_stanley;
pub mod golden;
pub mod linalg;
pub mod nilcoxeter;
pub mod partition;
pub mod pieri_ops;
pub mod strip_graphs;
pub mod symfunc;

pub use affine_perm::{AffinePerm, Core, Rank};
pub use error::{Error, Result};
pub use fomin_stanley::{BBasis, BExpansion};
pub use nilcoxeter::NilCoxElem;
pub use partition::{Composition, Partition};
pub use pieri_ops::verify::OperatorReport;
pub use pieri_ops::OpSpec;
pub use symfunc::{Basis, StrongSchur, SymFunc};
