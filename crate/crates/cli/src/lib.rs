//! File formats and subcommands of the `parzono` tool.

pub mod commands;
pub mod formats;
