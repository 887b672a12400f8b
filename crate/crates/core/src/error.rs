use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::analytics::AnalyticsError;
use crate::corpus::CorpusError;
use crate::engines::EngineError;
use crate::lexicon::LexiconError;
use crate::preprocess::PreprocessError;

/// Any failure of a pipeline run.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    OutputNotWritable {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot read report {path}: {reason}")]
    BadReport { path: PathBuf, reason: String },
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Corpus(e) => match e {
                CorpusError::FileNotReadable { .. } => "FILE_NOT_READABLE",
                CorpusError::MalformedRecord { .. } => "MALFORMED_RECORD",
                CorpusError::DuplicateId(_) => "DUPLICATE_ID",
                CorpusError::MissingField(_) => "MISSING_FIELD",
                CorpusError::EmptyText => "EMPTY_TEXT",
                CorpusError::UnknownFormat(_) => "UNKNOWN_FORMAT",
            },
            Error::Lexicon(e) => lexicon_code(e),
            Error::Preprocess(e) => match e {
                PreprocessError::Io { .. } => "FILE_NOT_READABLE",
                PreprocessError::MalformedLemma { .. } => "MALFORMED_LEMMA_TABLE",
                PreprocessError::MalformedStopwords { .. } => "MALFORMED_STOPWORDS",
            },
            Error::Engine(e) => match e {
                EngineError::WrongLexiconKind { .. } => "WRONG_LEXICON_KIND",
                EngineError::DroppedDocument(_) => "DROPPED_DOCUMENT",
                EngineError::InvalidConfig(_) => "INVALID_CONFIG",
                EngineError::Lexicon(e) => lexicon_code(e),
            },
            Error::Analytics(e) => match e {
                AnalyticsError::MixedEngines { .. } => "MIXED_ENGINES",
                AnalyticsError::MissingSubjectivity(_) => "MISSING_SUBJECTIVITY",
                AnalyticsError::ZeroBins => "INVALID_CONFIG",
            },
            Error::Config(_) => "INVALID_CONFIG",
            Error::OutputNotWritable { .. } => "OUTPUT_NOT_WRITABLE",
            Error::BadReport { .. } => "BAD_REPORT",
        }
    }
}

fn lexicon_code(e: &LexiconError) -> &'static str {
    match e {
        LexiconError::Io { .. } => "LEXICON_NOT_READABLE",
        LexiconError::MalformedEntry { .. } => "MALFORMED_ENTRY",
        LexiconError::OutOfRangeScore { .. } => "OUT_OF_RANGE_SCORE",
        LexiconError::DuplicateWord(_) => "DUPLICATE_WORD",
        LexiconError::WrongKind { .. } => "WRONG_LEXICON_KIND",
    }
}
