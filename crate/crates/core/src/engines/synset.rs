//! Synset scoring: each token is tagged, its senses are looked up by
//! (lemma, part of speech), and the sense scores are averaged over matched
//! tokens.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{require_kind, Engine, EngineError, SentimentScore};
use crate::lexicon::{Lexicon, LexiconError, LexiconKind, PosTag};

const BUNDLED_TAGS: &str = include_str!("../../data/pos_tags.tsv");

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disambiguation {
    /// Score of the rank-1 sense.
    #[default]
    FirstSense,
    /// Rank-weighted mean, `sum((pos - neg) / rank) / sum(1 / rank)`.
    AverageSenses,
}

impl fmt::Display for Disambiguation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Disambiguation::FirstSense => "first-sense",
            Disambiguation::AverageSenses => "average-senses",
        })
    }
}

impl FromStr for Disambiguation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first-sense" | "first_sense" => Ok(Disambiguation::FirstSense),
            "average-senses" | "average_senses" => Ok(Disambiguation::AverageSenses),
            other => Err(format!("unknown disambiguation {other:?}")),
        }
    }
}

/// Most-frequent-tag table with suffix fallback.
#[derive(Debug, Clone, Default)]
pub struct PosTagger {
    table: HashMap<String, PosTag>,
}

impl PosTagger {
    /// Parses `word<TAB>tag` lines.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut table = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let malformed = |reason: String| LexiconError::MalformedEntry { line: i + 1, reason };
            let (word, tag) = line
                .split_once('\t')
                .ok_or_else(|| malformed("expected word<TAB>tag".into()))?;
            let tag: PosTag = tag.trim().parse().map_err(malformed)?;
            if table.insert(word.trim().to_string(), tag).is_some() {
                return Err(LexiconError::DuplicateWord(word.trim().to_string()));
            }
        }
        Ok(PosTagger { table })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        PosTagger::parse(&text)
    }

    pub fn bundled() -> Self {
        PosTagger::parse(BUNDLED_TAGS).expect("bundled tag table is valid")
    }

    pub fn tag(&self, token: &str) -> PosTag {
        if let Some(t) = self.table.get(token) {
            return *t;
        }
        if token.ends_with("ly") {
            PosTag::Adv
        } else if token.ends_with("ing") || token.ends_with("ed") {
            PosTag::Verb
        } else if token.ends_with("ous") || token.ends_with("ful") || token.ends_with("able") {
            PosTag::Adj
        } else {
            PosTag::Noun
        }
    }
}

pub fn tag_pos(tokens: &[String], tagger: &PosTagger) -> Vec<(String, PosTag)> {
    tokens.iter().map(|t| (t.clone(), tagger.tag(t))).collect()
}

/// Contribution of each matched token, in token order.
pub fn synset_contributions(
    tagged: &[(String, PosTag)],
    lexicon: &Lexicon,
    disambiguation: Disambiguation,
) -> Result<Vec<f64>, EngineError> {
    require_kind(lexicon, LexiconKind::Synset)?;
    let mut out = Vec::new();
    for (tok, tag) in tagged {
        let senses = lexicon.lookup_synsets(tok, *tag)?;
        let Some(first) = senses.first() else {
            continue;
        };
        let c = if senses.len() == 1 || disambiguation == Disambiguation::FirstSense {
            first.net()
        } else {
            let (mut num, mut den) = (0.0, 0.0);
            for s in &senses {
                let rank = s.sense_rank as f64;
                num += s.net() / rank;
                den += 1.0 / rank;
            }
            num / den
        };
        out.push(c);
    }
    Ok(out)
}

pub fn score_synset(
    tagged: &[(String, PosTag)],
    lexicon: &Lexicon,
    disambiguation: Disambiguation,
) -> Result<SentimentScore, EngineError> {
    let cs = synset_contributions(tagged, lexicon, disambiguation)?;
    let polarity = if cs.is_empty() {
        0.0
    } else {
        (cs.iter().fold(0.0, |acc, c| acc + c) / cs.len() as f64).clamp(-1.0, 1.0) + 0.0
    };
    Ok(SentimentScore {
        engine: Engine::Synset,
        polarity,
        subjectivity: None,
        proportions: None,
    })
}
