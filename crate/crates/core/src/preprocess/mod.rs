//! Comment cleaning: normalization, tokenization, stopword removal,
//! lemmatization (optionally stemming) and the null / too-short drop rule.

mod lemma;
pub mod porter;

use std::collections::HashSet;
use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Comment, CommentCollection};
use crate::lexicon::PosTag;

pub use lemma::LemmaTable;
pub use porter::stem;

const BUNDLED_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// URL prefixes; a whitespace-delimited word starting with one is removed whole.
pub const URL_PREFIXES: [&str; 3] = ["http://", "https://", "www."];

/// The order in which [`normalize`] applies its steps. URLs go before
/// punctuation, otherwise `https://x.co` would survive as `httpsxco`.
pub const NORMALIZE_ORDER: [NormalizeStep; 5] = [
    NormalizeStep::Lowercase,
    NormalizeStep::DropUrls,
    NormalizeStep::DeleteHash,
    NormalizeStep::DeletePunctuation,
    NormalizeStep::CollapseWhitespace,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeStep {
    Lowercase,
    DropUrls,
    DeleteHash,
    DeletePunctuation,
    CollapseWhitespace,
}

#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed lemma table at line {line}: {reason}")]
    MalformedLemma { line: usize, reason: String },
    #[error("malformed stopword list at line {line}: {reason}")]
    MalformedStopwords { line: usize, reason: String },
}

/// A set of lowercase stopwords.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    /// One word per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, PreprocessError> {
        let mut words = HashSet::new();
        for (i, line) in text.lines().enumerate() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            if word.split_whitespace().count() != 1 || word.chars().any(char::is_uppercase) {
                return Err(PreprocessError::MalformedStopwords {
                    line: i + 1,
                    reason: format!("expected one lowercase word, got {word:?}"),
                });
            }
            words.insert(word.to_string());
        }
        Ok(Stopwords(words))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PreprocessError> {
        Stopwords::parse(&read(path.as_ref())?)
    }

    pub fn bundled() -> Self {
        Stopwords::parse(BUNDLED_STOPWORDS).expect("bundled stopword list is valid")
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<String> for Stopwords {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        Stopwords(iter.into_iter().collect())
    }
}

impl LemmaTable {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, PreprocessError> {
        LemmaTable::parse(&read(path.as_ref())?)
    }
}

fn read(path: &Path) -> Result<String, PreprocessError> {
    fs::read_to_string(path).map_err(|source| PreprocessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct PreprocessConfig {
    pub stopwords: Stopwords,
    pub lemmas: LemmaTable,
    pub min_token_count: NonZeroUsize,
    pub apply_stemming: bool,
    pub apply_lemmatization: bool,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            stopwords: Stopwords::bundled(),
            lemmas: LemmaTable::bundled(),
            min_token_count: NonZeroUsize::new(3).unwrap(),
            apply_stemming: false,
            apply_lemmatization: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    Null,
    TooShort,
}

impl DropReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::Null => "null",
            DropReason::TooShort => "too_short",
        }
    }
}

/// A comment after cleaning. Dropped documents keep whatever tokens
/// survived so the drop can be inspected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanedDocument {
    pub comment_id: String,
    pub raw_text: Option<String>,
    pub tokens: Vec<String>,
    pub dropped: Option<DropReason>,
}

impl CleanedDocument {
    pub fn is_dropped(&self) -> bool {
        self.dropped.is_some()
    }

    pub fn is_kept(&self) -> bool {
        self.dropped.is_none()
    }
}

fn is_url(word: &str) -> bool {
    URL_PREFIXES.iter().any(|p| word.starts_with(p))
}

/// Lowercases, removes URLs, `#` and ASCII punctuation, and collapses
/// whitespace, in [`NORMALIZE_ORDER`].
pub fn normalize(text: &str) -> String {
    let mut t = text.to_string();
    for step in NORMALIZE_ORDER {
        t = match step {
            NormalizeStep::Lowercase => t.to_lowercase(),
            NormalizeStep::DropUrls => t
                .split_whitespace()
                .filter(|w| !is_url(w))
                .collect::<Vec<_>>()
                .join(" "),
            NormalizeStep::DeleteHash => t.replace('#', ""),
            NormalizeStep::DeletePunctuation => t.chars().filter(|c| !c.is_ascii_punctuation()).collect(),
            NormalizeStep::CollapseWhitespace => t.split_whitespace().collect::<Vec<_>>().join(" "),
        };
    }
    t
}

pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

pub fn remove_stopwords(tokens: Vec<String>, stopwords: &Stopwords) -> Vec<String> {
    tokens.into_iter().filter(|t| !stopwords.contains(t)).collect()
}

/// Lemmatizes with the bundled table.
pub fn lemmatize(token: &str, pos_hint: Option<PosTag>) -> String {
    static TABLE: OnceLock<LemmaTable> = OnceLock::new();
    TABLE.get_or_init(LemmaTable::bundled).lemmatize(token, pos_hint)
}

/// Cleans one text. Returns the surviving tokens and the drop reason, if any.
///
/// Stopwords are filtered a second time after lemmatization, since a lemma
/// can be a stopword even when its inflected form is not.
pub fn preprocess_text(text: Option<&str>, config: &PreprocessConfig) -> (Vec<String>, Option<DropReason>) {
    let text = match text {
        None | Some("") => return (Vec::new(), Some(DropReason::Null)),
        Some(t) => t,
    };
    let mut tokens = remove_stopwords(tokenize(&normalize(text)), &config.stopwords);
    if config.apply_lemmatization {
        tokens = tokens.iter().map(|t| config.lemmas.lemmatize(t, None)).collect();
    }
    if config.apply_stemming {
        tokens = tokens.iter().map(|t| stem(t)).collect();
    }
    if config.apply_lemmatization || config.apply_stemming {
        tokens = remove_stopwords(tokens, &config.stopwords);
    }
    let dropped = (tokens.len() < config.min_token_count.get()).then_some(DropReason::TooShort);
    (tokens, dropped)
}

pub fn preprocess_comment(comment: &Comment, config: &PreprocessConfig) -> CleanedDocument {
    let (tokens, dropped) = preprocess_text(comment.text.as_deref(), config);
    CleanedDocument {
        comment_id: comment.id.clone(),
        raw_text: comment.text.clone(),
        tokens,
        dropped,
    }
}

/// One [`CleanedDocument`] per comment, in collection order.
pub fn preprocess_corpus(collection: &CommentCollection, config: &PreprocessConfig) -> Vec<CleanedDocument> {
    collection
        .comments()
        .par_iter()
        .map(|c| preprocess_comment(c, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize("Check THIS out!! https://x.co #wind"), "check this out wind");
        assert_eq!(normalize(""), "");
        assert_eq!(normalize("#Turbines, #turbines"), "turbines turbines");
        assert_eq!(normalize("don't   stop\twww.example.org now"), "dont stop now");
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("offshore wind energy"), toks(&["offshore", "wind", "energy"]));
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("a  b"), toks(&["a", "b"]));
    }

    #[test]
    fn stopword_examples() {
        let sw = Stopwords::bundled();
        assert_eq!(remove_stopwords(toks(&["the", "wind", "is", "clean"]), &sw), toks(&["wind", "clean"]));
        assert!(remove_stopwords(vec![], &sw).is_empty());
        assert_eq!(remove_stopwords(toks(&["wind"]), &Stopwords::default()), toks(&["wind"]));
        for kept in ["not", "no", "never", "very", "but", "nt"] {
            assert!(!sw.contains(kept), "{kept}");
        }
    }

    #[test]
    fn stopword_parse_rejects_phrases() {
        assert!(Stopwords::parse("a\nb c\n").is_err());
        assert!(Stopwords::parse("The\n").is_err());
        assert_eq!(Stopwords::parse("# c\n\na\n").unwrap().len(), 1);
    }

    #[test]
    fn full_pipeline_example() {
        let cfg = PreprocessConfig::default();
        let c = Comment::new("x", "Offshore wind turbines are killing whales!!");
        let d = preprocess_comment(&c, &cfg);
        assert_eq!(d.tokens, toks(&["offshore", "wind", "turbine", "killing", "whale"]));
        assert!(d.is_kept());
    }

    #[test]
    fn drops() {
        let cfg = PreprocessConfig::default();
        let mut null = Comment::new("n", "");
        null.text = None;
        assert_eq!(preprocess_comment(&null, &cfg).dropped, Some(DropReason::Null));
        assert_eq!(preprocess_comment(&Comment::new("e", ""), &cfg).dropped, Some(DropReason::Null));
        let d = preprocess_comment(&Comment::new("s", "The and a"), &cfg);
        assert_eq!(d.dropped, Some(DropReason::TooShort));
        assert!(d.tokens.is_empty());
    }

    #[test]
    fn threshold_is_configurable() {
        let cfg = PreprocessConfig {
            min_token_count: NonZeroUsize::new(1).unwrap(),
            ..PreprocessConfig::default()
        };
        assert!(preprocess_comment(&Comment::new("a", "wind"), &cfg).is_kept());
    }

    #[test]
    fn stemming_flag() {
        let cfg = PreprocessConfig {
            apply_stemming: true,
            ..PreprocessConfig::default()
        };
        let (t, _) = preprocess_text(Some("relational energies generate"), &cfg);
        assert_eq!(t, toks(&["relat", "energi", "gener"]));
    }

    #[test]
    fn corpus_order_is_preserved() {
        let comments: Vec<Comment> = (0..200)
            .map(|i| Comment::new(format!("c{i}"), format!("wind number {i} turbine")))
            .collect();
        let coll = CommentCollection::new(comments, "mem").unwrap();
        let docs = preprocess_corpus(&coll, &PreprocessConfig::default());
        for (i, d) in docs.iter().enumerate() {
            assert_eq!(d.comment_id, format!("c{i}"));
        }
    }

    proptest! {
        #[test]
        fn tokens_are_clean_and_idempotent(text in "\\PC{0,80}") {
            let cfg = PreprocessConfig::default();
            let (t1, _) = preprocess_text(Some(&text), &cfg);
            for t in &t1 {
                prop_assert!(!t.is_empty());
                prop_assert!(!t.contains('#'));
                prop_assert!(!t.chars().any(|c| c.is_ascii_punctuation()));
                prop_assert_eq!(t.to_lowercase(), t.clone());
            }
            let (t2, _) = preprocess_text(Some(&t1.join(" ")), &cfg);
            prop_assert_eq!(t1, t2);
        }

        #[test]
        fn normalize_never_grows_token_count(text in "[a-zA-Z#.,!:/ ]{0,60}") {
            let n = normalize(&text);
            prop_assert!(tokenize(&n).len() <= text.split_whitespace().count());
            prop_assert_eq!(normalize(&n), n);
        }
    }
}
