//! Library side of the `g2a` command-line tool.

pub mod commands;
pub mod corpus;
pub mod report;

pub use commands::*;
pub use report::{surface_report, SurfaceReport};
