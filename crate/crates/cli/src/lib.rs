//! Support code for the `zetakit` command-line tool.
pub mod format;
pub mod literal;
pub mod report;
