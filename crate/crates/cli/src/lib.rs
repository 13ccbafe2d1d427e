//! Library face of the `cohloc` binary: report schemas and command
//! implementations, kept callable so integration tests can parse and
//! round-trip the emitted documents.

pub mod report;
pub mod run;
