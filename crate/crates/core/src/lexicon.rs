//! Sentiment lexicons: valence, pattern (polarity + subjectivity), and synset.
//!
//! All three are line-oriented TSV files; blank lines and lines starting with
//! `#` are ignored. A file is validated in full before a [`Lexicon`] is
//! returned, so a partially valid lexicon never exists in memory.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const VALENCE_BOUND: f64 = 4.0;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed lexicon entry at line {line}: {reason}")]
    MalformedEntry { line: usize, reason: String },
    #[error("score out of range at line {line}: {reason}")]
    OutOfRangeScore { line: usize, reason: String },
    #[error("duplicate lexicon word {0:?}")]
    DuplicateWord(String),
    #[error("wrong lexicon kind: expected {expected}, found {found}")]
    WrongKind { expected: LexiconKind, found: LexiconKind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LexiconKind {
    Valence,
    Pattern,
    Synset,
}

impl fmt::Display for LexiconKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LexiconKind::Valence => "valence",
            LexiconKind::Pattern => "pattern",
            LexiconKind::Synset => "synset",
        })
    }
}

/// Coarse part-of-speech classes used for sense lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "noun",
            PosTag::Verb => "verb",
            PosTag::Adj => "adj",
            PosTag::Adv => "adv",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    /// Accepts full names and WordNet single-letter codes (`s` is a
    /// satellite adjective).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "noun" | "n" => Ok(PosTag::Noun),
            "verb" | "v" => Ok(PosTag::Verb),
            "adj" | "a" | "s" => Ok(PosTag::Adj),
            "adv" | "r" => Ok(PosTag::Adv),
            other => Err(format!("unknown part of speech {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValenceEntry {
    pub word: String,
    pub valence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternEntry {
    pub word: String,
    pub polarity: f64,
    pub subjectivity: f64,
    pub is_intensifier: bool,
    pub intensity_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynsetEntry {
    pub synset_id: String,
    pub pos_tag: PosTag,
    pub pos_score: f64,
    pub neg_score: f64,
    pub lemmas: Vec<String>,
    /// 1 is the most common sense of a lemma for this part of speech.
    pub sense_rank: u32,
}

impl SynsetEntry {
    pub fn objectivity(&self) -> f64 {
        1.0 - self.pos_score - self.neg_score
    }

    /// Signed sense score, `pos_score - neg_score`.
    pub fn net(&self) -> f64 {
        self.pos_score - self.neg_score
    }
}

#[derive(Debug, Clone)]
enum Entries {
    Valence(BTreeMap<String, ValenceEntry>),
    Pattern(BTreeMap<String, PatternEntry>),
    Synset {
        synsets: Vec<SynsetEntry>,
        // (lemma, pos) -> indices into `synsets`, ascending by sense rank
        index: BTreeMap<(String, PosTag), Vec<usize>>,
    },
}

/// A validated, immutable lexicon of one kind.
#[derive(Debug, Clone)]
pub struct Lexicon {
    kind: LexiconKind,
    entries: Entries,
    source: String,
    entry_count: usize,
}

const BUNDLED_VALENCE: &str = include_str!("../data/valence.tsv");
const BUNDLED_PATTERN: &str = include_str!("../data/pattern.tsv");
const BUNDLED_SYNSETS: &str = include_str!("../data/synsets.tsv");

/// Reads and validates a lexicon file.
pub fn load_lexicon(path: impl AsRef<Path>, kind: LexiconKind) -> Result<Lexicon, LexiconError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Lexicon::parse(&text, kind, path.display().to_string())
}

impl Lexicon {
    /// Parses lexicon text of the given kind.
    pub fn parse(text: &str, kind: LexiconKind, source: impl Into<String>) -> Result<Self, LexiconError> {
        let lines = data_lines(text);
        let (entries, entry_count) = match kind {
            LexiconKind::Valence => {
                let map = parse_valence(lines)?;
                let n = map.len();
                (Entries::Valence(map), n)
            }
            LexiconKind::Pattern => {
                let map = parse_pattern(lines)?;
                let n = map.len();
                (Entries::Pattern(map), n)
            }
            LexiconKind::Synset => {
                let synsets = parse_synsets(lines)?;
                let index = index_synsets(&synsets)?;
                let n = synsets.len();
                (Entries::Synset { synsets, index }, n)
            }
        };
        Ok(Lexicon {
            kind,
            entries,
            source: source.into(),
            entry_count,
        })
    }

    /// The lexicon of `kind` shipped with the crate.
    pub fn bundled(kind: LexiconKind) -> Self {
        let text = match kind {
            LexiconKind::Valence => BUNDLED_VALENCE,
            LexiconKind::Pattern => BUNDLED_PATTERN,
            LexiconKind::Synset => BUNDLED_SYNSETS,
        };
        Lexicon::parse(text, kind, format!("bundled:{kind}")).expect("bundled lexicon is valid")
    }

    /// Raw text of the bundled lexicon file of `kind`.
    pub fn bundled_source(kind: LexiconKind) -> &'static str {
        match kind {
            LexiconKind::Valence => BUNDLED_VALENCE,
            LexiconKind::Pattern => BUNDLED_PATTERN,
            LexiconKind::Synset => BUNDLED_SYNSETS,
        }
    }

    pub fn kind(&self) -> LexiconKind {
        self.kind
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Number of accepted lines.
    pub fn entry_count(&self) -> usize {
        self.entry_count
    }

    fn wrong_kind(&self, expected: LexiconKind) -> LexiconError {
        LexiconError::WrongKind {
            expected,
            found: self.kind,
        }
    }

    pub fn lookup_valence(&self, word: &str) -> Result<Option<f64>, LexiconError> {
        match &self.entries {
            Entries::Valence(map) => Ok(map.get(word).map(|e| e.valence)),
            _ => Err(self.wrong_kind(LexiconKind::Valence)),
        }
    }

    pub fn lookup_pattern(&self, word: &str) -> Result<Option<&PatternEntry>, LexiconError> {
        match &self.entries {
            Entries::Pattern(map) => Ok(map.get(word)),
            _ => Err(self.wrong_kind(LexiconKind::Pattern)),
        }
    }

    /// All senses of `(lemma, pos)`, ascending by sense rank.
    pub fn lookup_synsets(&self, lemma: &str, pos: PosTag) -> Result<Vec<&SynsetEntry>, LexiconError> {
        match &self.entries {
            Entries::Synset { synsets, index } => Ok(index
                .get(&(lemma.to_string(), pos))
                .map(|ids| ids.iter().map(|&i| &synsets[i]).collect())
                .unwrap_or_default()),
            _ => Err(self.wrong_kind(LexiconKind::Synset)),
        }
    }

    /// Valence entries in word order.
    pub fn valence_entries(&self) -> Result<impl Iterator<Item = &ValenceEntry>, LexiconError> {
        match &self.entries {
            Entries::Valence(map) => Ok(map.values()),
            _ => Err(self.wrong_kind(LexiconKind::Valence)),
        }
    }

    /// Pattern entries in word order.
    pub fn pattern_entries(&self) -> Result<impl Iterator<Item = &PatternEntry>, LexiconError> {
        match &self.entries {
            Entries::Pattern(map) => Ok(map.values()),
            _ => Err(self.wrong_kind(LexiconKind::Pattern)),
        }
    }

    /// Synset entries in file order.
    pub fn synset_entries(&self) -> Result<&[SynsetEntry], LexiconError> {
        match &self.entries {
            Entries::Synset { synsets, .. } => Ok(synsets),
            _ => Err(self.wrong_kind(LexiconKind::Synset)),
        }
    }
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn malformed(line: usize, reason: impl Into<String>) -> LexiconError {
    LexiconError::MalformedEntry {
        line,
        reason: reason.into(),
    }
}

fn fields<const N: usize>(line_no: usize, line: &str) -> Result<[&str; N], LexiconError> {
    let parts: Vec<&str> = line.split('\t').collect();
    parts
        .try_into()
        .map_err(|p: Vec<&str>| malformed(line_no, format!("expected {N} tab-separated fields, found {}", p.len())))
}

fn word_field(line_no: usize, raw: &str) -> Result<String, LexiconError> {
    let word = raw.trim();
    if word.is_empty() {
        return Err(malformed(line_no, "empty word"));
    }
    if word.chars().any(char::is_uppercase) {
        return Err(malformed(line_no, format!("word {word:?} is not lowercase")));
    }
    if word.chars().any(char::is_whitespace) {
        return Err(malformed(line_no, format!("word {word:?} contains whitespace")));
    }
    Ok(word.to_string())
}

fn number(line_no: usize, name: &str, raw: &str) -> Result<f64, LexiconError> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| malformed(line_no, format!("{name} {raw:?} is not a number")))
}

fn in_range(line_no: usize, name: &str, value: f64, lo: f64, hi: f64) -> Result<f64, LexiconError> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(LexiconError::OutOfRangeScore {
            line: line_no,
            reason: format!("{name} {value} outside [{lo}, {hi}]"),
        })
    }
}

fn parse_valence<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<BTreeMap<String, ValenceEntry>, LexiconError> {
    let mut map = BTreeMap::new();
    for (n, line) in lines {
        let [w, v] = fields::<2>(n, line)?;
        let word = word_field(n, w)?;
        let valence = in_range(n, "valence", number(n, "valence", v)?, -VALENCE_BOUND, VALENCE_BOUND)?;
        if map.contains_key(&word) {
            return Err(LexiconError::DuplicateWord(word));
        }
        map.insert(word.clone(), ValenceEntry { word, valence });
    }
    Ok(map)
}

fn parse_flag(line_no: usize, raw: &str) -> Result<bool, LexiconError> {
    match raw.trim() {
        "1" | "true" | "yes" => Ok(true),
        "0" | "false" | "no" => Ok(false),
        other => Err(malformed(line_no, format!("intensifier flag {other:?} is not 0/1"))),
    }
}

fn parse_pattern<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<BTreeMap<String, PatternEntry>, LexiconError> {
    let mut map = BTreeMap::new();
    for (n, line) in lines {
        let [w, p, s, flag, k] = fields::<5>(n, line)?;
        let word = word_field(n, w)?;
        let polarity = in_range(n, "polarity", number(n, "polarity", p)?, -1.0, 1.0)?;
        let subjectivity = in_range(n, "subjectivity", number(n, "subjectivity", s)?, 0.0, 1.0)?;
        let is_intensifier = parse_flag(n, flag)?;
        let intensity_factor = number(n, "intensity_factor", k)?;
        if !(intensity_factor > 0.0 && intensity_factor.is_finite()) {
            return Err(LexiconError::OutOfRangeScore {
                line: n,
                reason: format!("intensity_factor {intensity_factor} must be positive"),
            });
        }
        if map.contains_key(&word) {
            return Err(LexiconError::DuplicateWord(word));
        }
        map.insert(
            word.clone(),
            PatternEntry {
                word,
                polarity,
                subjectivity,
                is_intensifier,
                intensity_factor,
            },
        );
    }
    Ok(map)
}

fn parse_synsets<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<SynsetEntry>, LexiconError> {
    let mut out = Vec::new();
    for (n, line) in lines {
        let [id, pos, ps, ns, rank, lemmas] = fields::<6>(n, line)?;
        let synset_id = id.trim().to_string();
        if synset_id.is_empty() {
            return Err(malformed(n, "empty synset id"));
        }
        let pos_tag: PosTag = pos.trim().parse().map_err(|e: String| malformed(n, e))?;
        let pos_score = in_range(n, "pos_score", number(n, "pos_score", ps)?, 0.0, 1.0)?;
        let neg_score = in_range(n, "neg_score", number(n, "neg_score", ns)?, 0.0, 1.0)?;
        if pos_score + neg_score > 1.0 + 1e-9 {
            return Err(malformed(
                n,
                format!("pos_score + neg_score = {} exceeds 1", pos_score + neg_score),
            ));
        }
        let sense_rank: u32 = rank
            .trim()
            .parse()
            .ok()
            .filter(|&r| r >= 1)
            .ok_or_else(|| malformed(n, format!("sense_rank {rank:?} is not a positive integer")))?;
        let lemmas = lemmas
            .split(',')
            .map(|l| word_field(n, l))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(SynsetEntry {
            synset_id,
            pos_tag,
            pos_score,
            neg_score,
            lemmas,
            sense_rank,
        });
    }
    Ok(out)
}

fn index_synsets(synsets: &[SynsetEntry]) -> Result<BTreeMap<(String, PosTag), Vec<usize>>, LexiconError> {
    let mut index: BTreeMap<(String, PosTag), Vec<usize>> = BTreeMap::new();
    for (i, s) in synsets.iter().enumerate() {
        for lemma in &s.lemmas {
            let senses = index.entry((lemma.clone(), s.pos_tag)).or_default();
            if senses.iter().any(|&j| synsets[j].sense_rank == s.sense_rank) {
                return Err(LexiconError::DuplicateWord(format!(
                    "{lemma}/{} sense {}",
                    s.pos_tag, s.sense_rank
                )));
            }
            senses.push(i);
        }
    }
    for senses in index.values_mut() {
        senses.sort_by_key(|&i| synsets[i].sense_rank);
    }
    Ok(index)
}
