//! The three sentiment scorers and their shared output type.

pub mod pattern;
pub mod synset;
pub mod valence;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{load_lexicon, Lexicon, LexiconError, LexiconKind};
use crate::preprocess::CleanedDocument;

pub use pattern::score_pattern_avg;
pub use synset::{score_synset, tag_pos, Disambiguation, PosTagger};
pub use valence::{compound_from_sum, score_valence_rule, valence_breakdown, ValenceBreakdown, ValenceRuleConfig};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("wrong lexicon kind: expected {expected}, found {found}")]
    WrongLexiconKind { expected: LexiconKind, found: LexiconKind },
    #[error("document {0:?} was dropped during preprocessing and cannot be scored")]
    DroppedDocument(String),
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Lexicon(LexiconError),
}

impl From<LexiconError> for EngineError {
    fn from(e: LexiconError) -> Self {
        match e {
            LexiconError::WrongKind { expected, found } => EngineError::WrongLexiconKind { expected, found },
            other => EngineError::Lexicon(other),
        }
    }
}

pub(crate) fn require_kind(lexicon: &Lexicon, expected: LexiconKind) -> Result<(), EngineError> {
    if lexicon.kind() == expected {
        Ok(())
    } else {
        Err(EngineError::WrongLexiconKind {
            expected,
            found: lexicon.kind(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    ValenceRule,
    PatternAvg,
    Synset,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::ValenceRule, Engine::PatternAvg, Engine::Synset];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::ValenceRule => "valence_rule",
            Engine::PatternAvg => "pattern_avg",
            Engine::Synset => "synset",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "valence_rule" | "valence-rule" => Ok(Engine::ValenceRule),
            "pattern_avg" | "pattern-avg" => Ok(Engine::PatternAvg),
            "synset" => Ok(Engine::Synset),
            other => Err(format!("unknown engine {other:?}")),
        }
    }
}

/// Shares of positive, neutral and negative token mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportions {
    pub positive: f64,
    pub neutral: f64,
    pub negative: f64,
}

impl Proportions {
    pub fn all_neutral() -> Self {
        Proportions {
            positive: 0.0,
            neutral: 1.0,
            negative: 0.0,
        }
    }

    pub fn sum(&self) -> f64 {
        self.positive + self.neutral + self.negative
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub engine: Engine,
    /// In [-1, 1]; the value the labeling rule is applied to.
    pub polarity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subjectivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportions: Option<Proportions>,
}

/// Whether the valence engine also sees the raw comment text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineMode {
    /// Engines see cleaned tokens only; caps and `!` heuristics are inert.
    #[default]
    PaperFaithful,
    /// The valence engine also receives the raw text.
    EngineNative,
}

impl fmt::Display for PipelineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PipelineMode::PaperFaithful => "paper-faithful",
            PipelineMode::EngineNative => "engine-native",
        })
    }
}

impl FromStr for PipelineMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper-faithful" | "paper_faithful" => Ok(PipelineMode::PaperFaithful),
            "engine-native" | "engine_native" => Ok(PipelineMode::EngineNative),
            other => Err(format!("unknown pipeline mode {other:?}")),
        }
    }
}

/// File names expected inside a lexicon directory.
pub const VALENCE_FILE: &str = "valence.tsv";
pub const PATTERN_FILE: &str = "pattern.tsv";
pub const SYNSET_FILE: &str = "synsets.tsv";
pub const POS_TAG_FILE: &str = "pos_tags.tsv";

/// The lexicons used by the three engines, plus the tagger for synset lookup.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub valence: Lexicon,
    pub pattern: Lexicon,
    pub synset: Lexicon,
    pub tagger: PosTagger,
}

impl Lexicons {
    pub fn bundled() -> Self {
        Lexicons {
            valence: Lexicon::bundled(LexiconKind::Valence),
            pattern: Lexicon::bundled(LexiconKind::Pattern),
            synset: Lexicon::bundled(LexiconKind::Synset),
            tagger: PosTagger::bundled(),
        }
    }

    /// Loads the three lexicon files from `dir`. A `pos_tags.tsv` is used if
    /// present, otherwise the bundled tag table.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let dir = dir.as_ref();
        let tag_path = dir.join(POS_TAG_FILE);
        Ok(Lexicons {
            valence: load_lexicon(dir.join(VALENCE_FILE), LexiconKind::Valence)?,
            pattern: load_lexicon(dir.join(PATTERN_FILE), LexiconKind::Pattern)?,
            synset: load_lexicon(dir.join(SYNSET_FILE), LexiconKind::Synset)?,
            tagger: if tag_path.exists() {
                PosTagger::load(tag_path)?
            } else {
                PosTagger::bundled()
            },
        })
    }

    pub fn for_engine(&self, engine: Engine) -> &Lexicon {
        match engine {
            Engine::ValenceRule => &self.valence,
            Engine::PatternAvg => &self.pattern,
            Engine::Synset => &self.synset,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EngineConfig {
    pub valence: ValenceRuleConfig,
    pub disambiguation: Disambiguation,
    pub mode: PipelineMode,
}

/// One score per engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTriple {
    pub valence_rule: SentimentScore,
    pub pattern_avg: SentimentScore,
    pub synset: SentimentScore,
}

impl ScoreTriple {
    pub fn get(&self, engine: Engine) -> &SentimentScore {
        match engine {
            Engine::ValenceRule => &self.valence_rule,
            Engine::PatternAvg => &self.pattern_avg,
            Engine::Synset => &self.synset,
        }
    }
}

/// Scores a kept document with a single engine.
pub fn score_engine(
    engine: Engine,
    document: &CleanedDocument,
    lexicons: &Lexicons,
    config: &EngineConfig,
) -> Result<SentimentScore, EngineError> {
    if document.is_dropped() {
        return Err(EngineError::DroppedDocument(document.comment_id.clone()));
    }
    let tokens = &document.tokens;
    match engine {
        Engine::ValenceRule => {
            let raw = match config.mode {
                PipelineMode::PaperFaithful => None,
                PipelineMode::EngineNative => document.raw_text.as_deref(),
            };
            score_valence_rule(raw, tokens, &lexicons.valence, &config.valence)
        }
        Engine::PatternAvg => score_pattern_avg(tokens, &lexicons.pattern),
        Engine::Synset => score_synset(
            &tag_pos(tokens, &lexicons.tagger),
            &lexicons.synset,
            config.disambiguation,
        ),
    }
}

/// Scores a kept document with all three engines.
pub fn score_all(document: &CleanedDocument, lexicons: &Lexicons, config: &EngineConfig) -> Result<ScoreTriple, EngineError> {
    Ok(ScoreTriple {
        valence_rule: score_engine(Engine::ValenceRule, document, lexicons, config)?,
        pattern_avg: score_engine(Engine::PatternAvg, document, lexicons, config)?,
        synset: score_engine(Engine::Synset, document, lexicons, config)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::DropReason;
    use proptest::prelude::*;

    fn doc(tokens: &[&str]) -> CleanedDocument {
        CleanedDocument {
            comment_id: "d".into(),
            raw_text: Some(tokens.join(" ")),
            tokens: tokens.iter().map(|s| s.to_string()).collect(),
            dropped: None,
        }
    }

    #[test]
    fn dropped_documents_are_rejected() {
        let mut d = doc(&["ok"]);
        d.dropped = Some(DropReason::TooShort);
        assert!(matches!(
            score_all(&d, &Lexicons::bundled(), &EngineConfig::default()),
            Err(EngineError::DroppedDocument(_))
        ));
    }

    #[test]
    fn no_lexicon_words_means_all_zero() {
        let s = score_all(&doc(&["zzqx", "qqvv", "xxyz"]), &Lexicons::bundled(), &EngineConfig::default()).unwrap();
        for e in Engine::ALL {
            assert_eq!(s.get(e).polarity, 0.0, "{e}");
        }
    }

    #[test]
    fn mixed_up_lexicons_are_reported() {
        let mut lex = Lexicons::bundled();
        std::mem::swap(&mut lex.valence, &mut lex.pattern);
        let err = score_all(&doc(&["good"]), &lex, &EngineConfig::default()).unwrap_err();
        assert!(matches!(err, EngineError::WrongLexiconKind { .. }));
    }

    #[test]
    fn names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.as_str().parse::<Engine>().unwrap(), e);
        }
        for m in [PipelineMode::PaperFaithful, PipelineMode::EngineNative] {
            assert_eq!(m.to_string().parse::<PipelineMode>().unwrap(), m);
        }
    }

    fn vocabulary() -> Vec<String> {
        let lex = Lexicons::bundled();
        let mut words: Vec<String> = lex.valence.valence_entries().unwrap().map(|e| e.word.clone()).collect();
        words.extend(lex.pattern.pattern_entries().unwrap().map(|e| e.word.clone()));
        words.extend(valence::NEGATIONS.iter().map(|s| s.to_string()));
        words.extend(valence::BOOST_UP.iter().map(|s| s.to_string()));
        words.push("but".into());
        words.push("zzz".into());
        words
    }

    proptest! {
        #[test]
        fn engines_are_independent(idx in prop::collection::vec(0usize..10_000, 0..20)) {
            let vocab = vocabulary();
            let tokens: Vec<&str> = idx.iter().map(|i| vocab[i % vocab.len()].as_str()).collect();
            let d = doc(&tokens);
            let lex = Lexicons::bundled();
            let cfg = EngineConfig::default();
            let all = score_all(&d, &lex, &cfg).unwrap();
            for e in Engine::ALL.iter().rev() {
                let alone = score_engine(*e, &d, &lex, &cfg).unwrap();
                prop_assert_eq!(&alone, all.get(*e));
            }
        }
    }
}
