//! Command runner and HTTP session behind the `cosilt` binary.

pub mod commands;
pub mod serve;
