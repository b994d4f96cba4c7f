//! Library side of the `lud` command-line tool.

pub mod commands;
pub mod corpus;

pub use commands::{run, Cli, Command, Outcome};
pub use corpus::{run_corpus, CorpusEntry, CorpusReport, EntryReport};
