//! Command-line front end: file formats, reference fixtures and subcommands.

pub mod commands;
pub mod fixtures;
pub mod format;
