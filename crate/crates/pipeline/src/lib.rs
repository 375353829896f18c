//! Orchestration for the `sclab` command line.

pub mod artifacts;
pub mod config;
pub mod report;
pub mod run;
pub mod spectral;
