//! Implementation of the `freqkal` command-line tool: subcommand logic,
//! file formats, and chart rendering. The binary in `main.rs` is a thin
//! argument-parsing shell over this.

pub mod commands;
pub mod error;
pub mod formats;
pub mod svg;
