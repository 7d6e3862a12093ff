//! File formats, report documents, and command implementations behind the
//! `graphop` binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;
