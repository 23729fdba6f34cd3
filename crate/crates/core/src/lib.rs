//! Ringed finite sites, their skew category algebras, linear topologies and
//! the torsion theories of the associated module categories.

pub mod acceptance;
pub mod algebra;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod grskew;
pub mod io;
pub mod linalg;
pub mod modcat;
pub mod module;
pub mod oracle;
pub mod recollement;
pub mod report;
pub mod ring;
pub mod topology;
pub mod torsion;
pub mod universe;

pub use error::{Budget, Error, Result};
