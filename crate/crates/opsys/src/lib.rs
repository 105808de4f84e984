//! File formats and batch experiments for the `opsys` command-line tool.

pub mod experiments;
pub mod json;
