//! Command line front end for `legendre-core`.
//!
//! A run reads a JSON config naming a norm, a curve source and an
//! operation, and writes any of a CSV table, an SVG plot and a JSON report.

pub mod catalog;
pub mod config;
pub mod csv_io;
pub mod expr;
pub mod report;
pub mod run;
pub mod svg;

pub use config::{load_config, parse_config, RunConfig};
pub use run::{run, run_file, Overrides, RunError};
