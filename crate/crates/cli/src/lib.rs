//! Bundle files, report streams and the `homcoder` command line.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::run;
