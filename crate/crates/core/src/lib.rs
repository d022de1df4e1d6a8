//! Exact tools for testing hidden-variable models against interferometer
//! statistics: a small state-vector simulator, finite ontological models, and
//! exact-rational feasibility checks for the no-go arguments built on them.

pub mod error;
pub mod interferometer;
pub mod nogo;
pub mod ontology;
pub mod qstate;
pub mod rational;

pub use error::{Error, Result};
