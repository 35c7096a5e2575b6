use thiserror::Error;

use crate::lattice::{Alphabet, Model};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("window of width {width} is too short (need at least {needed})")]
    WindowTooShort { width: usize, needed: usize },

    #[error("update row covers [{row_offset}, +{row_len}) but configuration covers [{offset}, +{len})")]
    MisalignedRow {
        offset: i64,
        len: usize,
        row_offset: i64,
        row_len: usize,
    },

    #[error("model {model:?} expects the {expected:?} alphabet, got {got:?}")]
    WrongAlphabet {
        model: Model,
        expected: Alphabet,
        got: Alphabet,
    },

    #[error("symbol {symbol:?} is not in the {alphabet:?} alphabet")]
    ForeignSymbol {
        symbol: crate::lattice::Symbol,
        alphabet: Alphabet,
    },

    #[error("window exhausted after {completed} of {requested} steps")]
    WindowExhausted { completed: usize, requested: usize },

    #[error("operation needs a model C or D trajectory with a merge log, got model {0:?}")]
    NoMergeLog(Model),

    #[error("n = {n} is outside the exact regime (n <= {max}); use the log-space density")]
    OutsideExactRegime { n: u64, max: u64 },

    #[error("invalid transition table: {0}")]
    InvalidRule(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("output window is empty: support of width {support} cannot feed a neighborhood of span {span}")]
    EmptyImage { support: usize, span: usize },

    #[error("interval [{start}, {end}] is not contained in the support [{support_start}, {support_end}]")]
    NotASubinterval {
        start: i64,
        end: i64,
        support_start: i64,
        support_end: i64,
    },

    #[error("measure support of {len} sites exceeds the cap of {cap}")]
    SupportTooLarge { len: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot render an empty trajectory")]
    EmptyTrajectory,

    #[error("rule file line {line}: {msg}")]
    RuleParse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
