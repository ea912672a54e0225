//! Diagram syntax, JSON encodings, benchmark generators and the runner
//! behind the `compmpg` command.

pub mod syntax;
pub mod gen;
pub mod json;
pub mod runner;
