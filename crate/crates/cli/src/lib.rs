//! Expression language, output formats and commands of the `reducta` binary.

pub mod commands;
pub mod expr;
pub mod output;

pub use commands::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
