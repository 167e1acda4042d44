//! Library side of the `deform` command-line tool.

pub mod commands;
pub mod report;
