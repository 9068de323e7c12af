//! Reading tables and melody specifications, and checking that they fit
//! together.

mod binding;
mod spec;
mod table;

use thiserror::Error;

pub use binding::{validate_binding, Binding, XAxis};
pub use spec::{
    parse_spec, parse_time_signature, Idiom, MelodySpec, Palette, DEFAULT_LOOP_COUNT, TEMPO_RANGE,
};
pub use table::{parse_table, Column, ColumnData, ColumnKind, Dataset, TableFormat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("dataset has no data rows")]
    EmptyDataset,
    #[error("unknown idiom {0:?} (expected bar, pie, line or scatter)")]
    UnknownIdiom(String),
    #[error("unknown palette {0:?} (expected positive, negative, grey, exciting or calm)")]
    UnknownPalette(String),
    #[error("missing required field `{0}`")]
    MissingField(&'static str),
    #[error("invalid value for `{field}`: {reason}")]
    InvalidValue { field: String, reason: String },
    #[error("no column named {0:?}")]
    UnknownColumn(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("category {category:?} has negative proportion {value}")]
    NegativeProportion { category: String, value: f64 },
    #[error("pie values sum to zero")]
    ZeroProportions,
}
