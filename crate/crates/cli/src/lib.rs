//! File formats and report rendering for the `cocom` command-line tool.

pub mod document;
pub mod render;
