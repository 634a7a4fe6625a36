//! Library side of the `berline` command-line tool: input parsing, command dispatch and
//! report rendering.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{run, Command, Exit, UsageError};
pub use input::{parse, parse_str, InputDocument, RawDocument, Representation, SchemaError};
pub use report::Report;
