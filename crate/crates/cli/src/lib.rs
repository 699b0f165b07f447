//! Lexicon files and the `densem` command line.

pub mod app;
pub mod fixtures;
pub mod lexfile;
pub mod repro;
