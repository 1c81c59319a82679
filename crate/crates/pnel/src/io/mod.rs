//! File formats: native knowledge bases, examples, configuration, CSV
//! conversion and classifier documents.

pub mod config;
pub mod csv_import;
pub mod examples;
pub mod export;
pub mod kb_text;

pub use config::RunConfig;
pub use csv_import::{csv_to_kb, ColumnKind, CsvOptions, PositiveFlag};
pub use examples::{load_examples, parse_examples, write_examples};
pub use export::{load_model, parse_model, write_document, write_model, ModelDocument};
pub use kb_text::{load_kb, parse_kb, write_kb};
