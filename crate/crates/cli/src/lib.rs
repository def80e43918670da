//! Command implementations and report rendering behind the `qrepeat` binary.

pub mod commands;
pub mod error;
pub mod input;
pub mod render;
pub mod report;
