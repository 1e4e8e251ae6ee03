//! File formats, reporting and the `msglex` command-line tool built on
//! [`msglex_core`].

pub mod cli;
pub mod corpus_io;
pub mod parallel;
pub mod report;
pub mod wordlist;

pub use msglex_core as core;
