//! Corpus-driven verification of the S-n-absorbing statements, and the
//! `snabs` command line.

pub mod cli;
pub mod corpus;
pub mod engine;
pub mod props;
pub mod report;
