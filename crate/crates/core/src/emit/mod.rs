//! Output formats: Standard MIDI File and a line-oriented text score.

mod parse;
mod smf;
mod text;
mod vlq;

use thiserror::Error;

pub use parse::{parse_smf_minimal, ParsedEvent, ParsedNote, ParsedPedal, ParsedSmf};
pub use smf::{gate_ticks, sounding_lengths, write_smf, SmfConfig};
pub use text::write_text_score;
pub use vlq::{encode_vlq, VLQ_MAX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("{0} does not fit in a variable-length quantity")]
    VlqOverflow(u64),
    #[error("score still has a loop marker; expand loops before writing")]
    UnexpandedLoop,
    #[error("score is not writable: {0}")]
    StructuralViolation(String),
    #[error("invalid output settings: {0}")]
    InvalidConfig(String),
    #[error("malformed MIDI file: {0}")]
    MalformedSmf(String),
}
