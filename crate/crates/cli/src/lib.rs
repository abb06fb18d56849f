//! Library side of the `artin` command-line tool: file formats, report
//! structures, command execution, and the search harness.

pub mod commands;
pub mod ideal_file;
pub mod report;
pub mod search;
