//! Comment corpora: the data model and CSV/JSONL ingestion.
//!
//! Loading is strict by default: the first malformed record aborts the load.
//! In lenient mode malformed records are skipped and collected into a skip
//! report instead. Duplicate ids are fatal in both modes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while loading or validating a corpus.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    FileNotReadable {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: u64, reason: String },
    #[error("duplicate comment id {0:?}")]
    DuplicateId(String),
    #[error("missing field {0:?}")]
    MissingField(String),
    #[error("comment text is an empty string")]
    EmptyText,
    #[error("unknown corpus format {0:?} (expected csv or jsonl)")]
    UnknownFormat(String),
}

/// One social-media comment.
///
/// `text` is `None` for null comments (a JSON `null` or an empty CSV cell).
/// Null comments are kept in the collection so that preprocessing can drop
/// them with an explicit reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comment {
    pub id: String,
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl Comment {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Comment {
            id: id.into(),
            text: Some(text.into()),
            source_group: None,
            timestamp: None,
        }
    }
}

/// An ordered, immutable set of comments with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommentCollection {
    comments: Vec<Comment>,
    source_path: PathBuf,
}

impl CommentCollection {
    /// Builds a collection, rejecting duplicate ids.
    pub fn new(
        comments: Vec<Comment>,
        source_path: impl Into<PathBuf>,
    ) -> Result<Self, CorpusError> {
        let mut seen = HashSet::with_capacity(comments.len());
        for c in &comments {
            if !seen.insert(c.id.as_str()) {
                return Err(CorpusError::DuplicateId(c.id.clone()));
            }
        }
        Ok(CommentCollection {
            comments,
            source_path: source_path.into(),
        })
    }

    pub fn comments(&self) -> &[Comment] {
        &self.comments
    }

    pub fn source_path(&self) -> &Path {
        &self.source_path
    }

    pub fn record_count(&self) -> usize {
        self.comments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comments.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Comment> {
        self.comments.iter()
    }

    /// Keeps only comments whose `source_group` equals `group`.
    pub fn filter_group(&self, group: &str) -> CommentCollection {
        CommentCollection {
            comments: self
                .comments
                .iter()
                .filter(|c| c.source_group.as_deref() == Some(group))
                .cloned()
                .collect(),
            source_path: self.source_path.clone(),
        }
    }
}

impl<'a> IntoIterator for &'a CommentCollection {
    type Item = &'a Comment;
    type IntoIter = std::slice::Iter<'a, Comment>;

    fn into_iter(self) -> Self::IntoIter {
        self.comments.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Csv,
    Jsonl,
}

impl FromStr for CorpusFormat {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(CorpusFormat::Csv),
            "jsonl" | "ndjson" => Ok(CorpusFormat::Jsonl),
            other => Err(CorpusError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::Csv => "csv",
            CorpusFormat::Jsonl => "jsonl",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

/// A record skipped in lenient mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadOutcome {
    pub collection: CommentCollection,
    pub skipped: Vec<SkippedRecord>,
}

impl LoadOutcome {
    /// Number of input records seen (accepted plus skipped).
    pub fn total_records(&self) -> usize {
        self.collection.record_count() + self.skipped.len()
    }
}

/// Field map for one raw input record. `None` marks a null value (JSON
/// `null`, or an empty CSV cell).
pub type FieldMap = BTreeMap<String, Option<String>>;

/// Turns one raw record into a [`Comment`].
///
/// The id is trimmed; the text is kept verbatim. Optional fields that are
/// missing, null, or empty become `None`.
pub fn validate_record(raw: &FieldMap) -> Result<Comment, CorpusError> {
    let id = match raw.get("id") {
        Some(Some(id)) if !id.trim().is_empty() => id.trim().to_string(),
        _ => return Err(CorpusError::MissingField("id".into())),
    };
    let text = match raw.get("text") {
        None => return Err(CorpusError::MissingField("text".into())),
        Some(None) => None,
        Some(Some(t)) if t.is_empty() => return Err(CorpusError::EmptyText),
        Some(Some(t)) => Some(t.clone()),
    };
    let optional = |name: &str| match raw.get(name) {
        Some(Some(v)) if !v.is_empty() => Some(v.clone()),
        _ => None,
    };
    Ok(Comment {
        id,
        text,
        source_group: optional("source_group"),
        timestamp: optional("timestamp"),
    })
}

/// Loads a corpus in strict mode.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<CommentCollection, CorpusError> {
    load_corpus_with(path, format, ParseMode::Strict).map(|o| o.collection)
}

/// Loads a corpus, returning the skip report alongside the collection.
pub fn load_corpus_with(
    path: impl AsRef<Path>,
    format: CorpusFormat,
    mode: ParseMode,
) -> Result<LoadOutcome, CorpusError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| CorpusError::FileNotReadable {
        path: path.to_path_buf(),
        source,
    })?;
    let mut sink = RecordSink::new(mode);
    match format {
        CorpusFormat::Jsonl => parse_jsonl(&bytes, &mut sink)?,
        CorpusFormat::Csv => parse_csv(&bytes, &mut sink)?,
    }
    let collection = CommentCollection::new(sink.accepted, path)?;
    Ok(LoadOutcome {
        collection,
        skipped: sink.skipped,
    })
}

struct RecordSink {
    mode: ParseMode,
    accepted: Vec<Comment>,
    skipped: Vec<SkippedRecord>,
    ids: HashSet<String>,
}

impl RecordSink {
    fn new(mode: ParseMode) -> Self {
        RecordSink {
            mode,
            accepted: Vec::new(),
            skipped: Vec::new(),
            ids: HashSet::new(),
        }
    }

    fn push(&mut self, line: u64, record: Result<FieldMap, String>) -> Result<(), CorpusError> {
        let comment = record.and_then(|fields| validate_record(&fields).map_err(|e| e.to_string()));
        match comment {
            Ok(c) => {
                if !self.ids.insert(c.id.clone()) {
                    return Err(CorpusError::DuplicateId(c.id));
                }
                self.accepted.push(c);
                Ok(())
            }
            Err(reason) => match self.mode {
                ParseMode::Strict => Err(CorpusError::MalformedRecord { line, reason }),
                ParseMode::Lenient => {
                    self.skipped.push(SkippedRecord { line, reason });
                    Ok(())
                }
            },
        }
    }
}

fn parse_jsonl(bytes: &[u8], sink: &mut RecordSink) -> Result<(), CorpusError> {
    for (idx, raw_line) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx as u64 + 1;
        let raw_line = raw_line.strip_suffix(b"\r").unwrap_or(raw_line);
        if raw_line.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        let record = std::str::from_utf8(raw_line)
            .map_err(|_| "invalid UTF-8".to_string())
            .and_then(json_fields);
        sink.push(line_no, record)?;
    }
    Ok(())
}

fn json_fields(line: &str) -> Result<FieldMap, String> {
    let value: serde_json::Value = serde_json::from_str(line).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value
        .as_object()
        .ok_or_else(|| "record is not a JSON object".to_string())?;
    let mut fields = FieldMap::new();
    for (key, v) in obj {
        let v = match v {
            serde_json::Value::Null => None,
            serde_json::Value::String(s) => Some(s.clone()),
            other => return Err(format!("field {key:?} must be a string or null, got {other}")),
        };
        fields.insert(key.clone(), v);
    }
    Ok(fields)
}

fn parse_csv(bytes: &[u8], sink: &mut RecordSink) -> Result<(), CorpusError> {
    if bytes.iter().all(u8::is_ascii_whitespace) {
        return Ok(());
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| CorpusError::MalformedRecord {
            line: 1,
            reason: format!("unreadable header: {e}"),
        })?
        .clone();
    let columns: Vec<String> = headers.iter().map(|h| h.trim().to_string()).collect();
    for required in ["id", "text"] {
        if !columns.iter().any(|c| c == required) {
            return Err(CorpusError::MalformedRecord {
                line: 1,
                reason: format!("header lacks column {required:?}"),
            });
        }
    }
    for result in reader.records() {
        let (line, record) = match result {
            Ok(rec) => {
                let line = rec.position().map(|p| p.line()).unwrap_or(0);
                let fields = columns
                    .iter()
                    .zip(rec.iter())
                    .map(|(k, v)| (k.clone(), (!v.is_empty()).then(|| v.to_string())))
                    .collect();
                (line, Ok(fields))
            }
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                if !matches!(e.kind(), csv::ErrorKind::UnequalLengths { .. } | csv::ErrorKind::Utf8 { .. }) {
                    return Err(CorpusError::MalformedRecord {
                        line,
                        reason: e.to_string(),
                    });
                }
                (line, Err(e.to_string()))
            }
        };
        sink.push(line, record)?;
    }
    Ok(())
}

/// Writes a collection as JSONL, one object per comment, in collection order.
pub fn write_jsonl<W: Write>(collection: &CommentCollection, mut out: W) -> io::Result<()> {
    for c in collection {
        serde_json::to_writer(&mut out, c)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Writes the lenient-mode skip report as JSONL of `{line, reason}`.
pub fn write_skip_report<W: Write>(skipped: &[SkippedRecord], mut out: W) -> io::Result<()> {
    for s in skipped {
        serde_json::to_writer(&mut out, s)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
