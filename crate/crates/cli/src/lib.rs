//! Library surface of the command-line front-end: the expression parser
//! and printer, and the structured-output types, kept separate so tests
//! can exercise them without spawning the binary.

pub mod expr;
pub mod output;

/// Output rendering selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}
