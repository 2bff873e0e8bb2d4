//! Library side of the experiment CLI: configuration, commands and report
//! types, kept separate from the binary so integration tests can drive the
//! experiments in-process.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;
