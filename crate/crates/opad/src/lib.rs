//! Operations on cosimplicial algebras generated from interval cuts and lattice paths.

pub mod bicomplex;
pub mod cosim;
pub mod error;
pub mod field;
pub mod formula;
pub mod instances;
pub mod lattice;
pub mod lie;
pub mod linalg;
pub mod paths;
pub mod simplicial;
pub mod sketch;

pub use error::{Error, Result};
