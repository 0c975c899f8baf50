//! Batch front end for `twoloc-core`: ring and filter specs in, reports out.

pub mod commands;
pub mod filters;
pub mod job;
pub mod report;
pub mod verify;

pub use commands::{execute, Cli, Command, Format, Options};
pub use report::Report;
