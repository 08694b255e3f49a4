//! Library side of the `benford` command: dataset ingestion, the versioned
//! report document, and the `verify-paper` check table.

pub mod app;
pub mod commands;
pub mod error;
pub mod ingest;
pub mod report;
pub mod table;
pub mod verify;

pub use error::{exit, CliError, Result};
pub use ingest::{ingest, parse_decimal, DatasetColumn, InputFormat};
pub use report::ReportDocument;
