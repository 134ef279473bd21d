//! Parsing, serialization, job files and the task dispatcher shared with the CLI.

pub mod fam;
pub mod format;
pub mod job;
pub mod ops;
pub mod parse;
