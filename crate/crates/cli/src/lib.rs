//! Text formats and command dispatch for the `kerrep` binary.

pub mod commands;
pub mod format;

pub use commands::{run, Outcome};
pub use format::{parse_problem, parse_problem_bytes, print_problem, ParseError, Problem};
