//! Harness library behind the `orlab` binary: seeded test families,
//! experiment configuration, the empirical boundedness runner, and the
//! scripted reproduction catalog.

pub mod boundedness;
pub mod experiment;
pub mod family;
pub mod reproduce;

pub use boundedness::{run_boundedness, BoundednessReport};
pub use experiment::ExperimentSpec;
pub use family::{generate_family, FamilyConfig, FamilyKind};
