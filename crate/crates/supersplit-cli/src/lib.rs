//! Document and report formats of the `supersplit` command-line tool,
//! exposed as a library so tests and other front ends can parse what the
//! binary emits.

pub mod document;
pub mod report;
