//! Deciding homogeneity-type properties of finite algebras.

pub mod algebra;
pub mod builtin;
pub mod cli;
pub mod clone;
pub mod corpus;
pub mod decide;
pub mod error;
pub mod format;
pub mod hom;
pub mod monounary;
pub mod pointset;
pub mod power;
pub mod pp;
pub mod relation;
pub mod report;
pub mod selftest;
pub mod term;
pub mod variety;
pub mod verdict;

pub use algebra::{Element, FiniteAlgebra, OperationTable, ResourceBounds, Tuple};
pub use error::{Error, Result};
pub use pointset::PointSet;
pub use relation::Relation;
