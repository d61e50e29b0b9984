//! Library surface of the command-line tool: input formats, reports, and
//! the command implementations. The binary is a thin wrapper, and the
//! fixture generator example reuses the same serialization types.

pub mod commands;
pub mod format;
pub mod report;
