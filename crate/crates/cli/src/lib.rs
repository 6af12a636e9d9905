//! Command-line companion to `modcycle-core`: the graph text format,
//! seeded instance generation, engine benchmarking, and subcommands that
//! classify `(set, modulus)` instances, decide and search graphs, build
//! hardness gadgets and run the enumeration oracle. Every run prints one
//! JSON document on stdout (except `reduce` and `bench`, whose artifacts
//! are the graph text and the CSV table) with summaries on stderr.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod app;
pub mod bench;
pub mod format;
pub mod gen;
pub mod report;

pub use app::run;
