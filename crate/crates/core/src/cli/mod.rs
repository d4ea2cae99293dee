//! Command-line front end: parsing, formatting, reports and subcommands.

pub mod commands;
pub mod corpus;
pub mod format;
pub mod parse;
pub mod report;

pub use parse::{parse_map, MapExpr};
pub use report::ReportDocument;
