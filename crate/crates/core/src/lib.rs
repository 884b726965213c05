//! Finite right quasigroups, quandles and (oriented) singquandles.
//!
//! Structures are stored as operation tables over `0..n`; every text format
//! read or written by this crate is 1-based so that tables can be copied
//! verbatim from the literature.

pub mod affine;
pub mod axioms;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod links;
pub mod structure;
pub mod tbl;

pub use error::{Error, Result};
pub use exec::Exec;
pub use structure::{OperationTable, PropertyFlags, RightQuasigroup, Structure, TwoOpStructure};
