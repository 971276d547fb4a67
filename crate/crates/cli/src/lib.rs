//! Site documents, reports and the command-line front end for
//! `site-forge-core`.

pub mod document;
pub mod commands;
pub mod report;
