//! Exact computations on Grassmannians of small finite vector spaces:
//! simultaneously coordinatizable families of subspaces (R-sets), their
//! degree of inexactness, maps between Grassmannians, and involutions.

pub mod budget;
pub mod cli;
pub mod error;
pub mod field;
pub mod involutions;
pub mod maps;
pub mod matrix;
pub mod report;
pub mod rset;
pub mod subspace;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec};
pub use matrix::Matrix;
pub use report::{Counterexample, Params, Report};
pub use subspace::{GrassmannianIndex, Space, Subspace};
