//! Polarity labels and the corpus-level analytics built on them: label
//! distributions, the subjectivity histogram, and top-word rankings.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engines::valence::is_modifier;
use crate::engines::{Engine, Lexicons, SentimentScore};
use crate::preprocess::CleanedDocument;

pub const DEFAULT_BINS: usize = 10;
pub const DEFAULT_TOP_N: usize = 30;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("expected results of engine {expected}, found {found}")]
    MixedEngines { expected: Engine, found: Engine },
    #[error("score for engine {0} has no subjectivity")]
    MissingSubjectivity(Engine),
    #[error("bin count must be at least 1")]
    ZeroBins,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityLabel {
    Positive,
    Neutral,
    Negative,
}

impl PolarityLabel {
    pub const ALL: [PolarityLabel; 3] = [PolarityLabel::Positive, PolarityLabel::Neutral, PolarityLabel::Negative];

    pub fn as_str(self) -> &'static str {
        match self {
            PolarityLabel::Positive => "positive",
            PolarityLabel::Neutral => "neutral",
            PolarityLabel::Negative => "negative",
        }
    }
}

impl fmt::Display for PolarityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Positive above `epsilon`, negative below `-epsilon`, neutral otherwise.
/// With `epsilon = 0` only an exact zero is neutral.
pub fn label(polarity: f64, epsilon: f64) -> PolarityLabel {
    if polarity > epsilon {
        PolarityLabel::Positive
    } else if polarity < -epsilon {
        PolarityLabel::Negative
    } else {
        PolarityLabel::Neutral
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledComment {
    pub comment_id: String,
    pub engine: Engine,
    pub score: SentimentScore,
    pub label: PolarityLabel,
}

impl LabeledComment {
    pub fn new(comment_id: impl Into<String>, score: SentimentScore, epsilon: f64) -> Self {
        LabeledComment {
            comment_id: comment_id.into(),
            engine: score.engine,
            label: label(score.polarity, epsilon),
            score,
        }
    }
}

fn check_engine(expected: Engine, found: Engine) -> Result<(), AnalyticsError> {
    if expected == found {
        Ok(())
    } else {
        Err(AnalyticsError::MixedEngines { expected, found })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub positive: u64,
    pub neutral: u64,
    pub negative: u64,
}

impl LabelCounts {
    pub fn get(&self, l: PolarityLabel) -> u64 {
        match l {
            PolarityLabel::Positive => self.positive,
            PolarityLabel::Neutral => self.neutral,
            PolarityLabel::Negative => self.negative,
        }
    }

    fn bump(&mut self, l: PolarityLabel) {
        match l {
            PolarityLabel::Positive => self.positive += 1,
            PolarityLabel::Neutral => self.neutral += 1,
            PolarityLabel::Negative => self.negative += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.positive + self.neutral + self.negative
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LabelProportions {
    pub positive: f64,
    pub neutral: f64,
    pub negative: f64,
}

impl LabelProportions {
    pub fn get(&self, l: PolarityLabel) -> f64 {
        match l {
            PolarityLabel::Positive => self.positive,
            PolarityLabel::Neutral => self.neutral,
            PolarityLabel::Negative => self.negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub engine: Engine,
    pub counts: LabelCounts,
    pub proportions: LabelProportions,
}

impl DistributionReport {
    /// Builds a report from counts. Proportions are all zero when the
    /// counts are.
    pub fn from_counts(engine: Engine, counts: LabelCounts) -> Self {
        let n = counts.total();
        let share = |c: u64| if n == 0 { 0.0 } else { c as f64 / n as f64 };
        DistributionReport {
            engine,
            counts,
            proportions: LabelProportions {
                positive: share(counts.positive),
                neutral: share(counts.neutral),
                negative: share(counts.negative),
            },
        }
    }

    /// Combines the distributions of two disjoint shards.
    pub fn merge(&self, other: &DistributionReport) -> Result<DistributionReport, AnalyticsError> {
        check_engine(self.engine, other.engine)?;
        Ok(DistributionReport::from_counts(
            self.engine,
            LabelCounts {
                positive: self.counts.positive + other.counts.positive,
                neutral: self.counts.neutral + other.counts.neutral,
                negative: self.counts.negative + other.counts.negative,
            },
        ))
    }
}

pub fn distribution(labeled: &[LabeledComment], engine: Engine) -> Result<DistributionReport, AnalyticsError> {
    let mut counts = LabelCounts::default();
    for l in labeled {
        check_engine(engine, l.engine)?;
        counts.bump(l.label);
    }
    Ok(DistributionReport::from_counts(engine, counts))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectivityHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `None` for an empty input.
    pub mean: Option<f64>,
    pub median: Option<f64>,
}

/// Uniform bins over [0, 1]. A value on an inner edge goes to the lower bin;
/// 0.0 goes to the first bin.
pub fn subjectivity_histogram(scores: &[SentimentScore], bin_count: usize) -> Result<SubjectivityHistogram, AnalyticsError> {
    if bin_count == 0 {
        return Err(AnalyticsError::ZeroBins);
    }
    let values = scores
        .iter()
        .map(|s| s.subjectivity.ok_or(AnalyticsError::MissingSubjectivity(s.engine)))
        .collect::<Result<Vec<f64>, _>>()?;
    let bin_edges: Vec<f64> = (0..=bin_count).map(|i| i as f64 / bin_count as f64).collect();
    let mut counts = vec![0u64; bin_count];
    for &v in &values {
        let b = (0..bin_count).find(|&b| v <= bin_edges[b + 1]).unwrap_or(bin_count - 1);
        counts[b] += 1;
    }
    let (mean, median) = if values.is_empty() {
        (None, None)
    } else {
        let n = values.len();
        let mean = values.iter().fold(0.0, |acc, v| acc + v) / n as f64;
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        (Some(mean), Some(median))
    };
    Ok(SubjectivityHistogram {
        bin_edges,
        counts,
        mean,
        median,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub const ALL: [Side; 2] = [Side::Positive, Side::Negative];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Positive => "positive",
            Side::Negative => "negative",
        }
    }

    pub fn label(self) -> PolarityLabel {
        match self {
            Side::Positive => PolarityLabel::Positive,
            Side::Negative => PolarityLabel::Negative,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Side::Positive),
            "negative" => Ok(Side::Negative),
            other => Err(format!("unknown side {other:?} (expected positive or negative)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRanking {
    pub engine: Engine,
    pub side: Side,
    pub entries: Vec<(String, u64)>,
}

/// The lexicon score that decides whether `token` counts as a positive or
/// negative word for `engine`. `None` if the word is not scored at all.
pub fn word_score(engine: Engine, token: &str, lexicons: &Lexicons) -> Option<f64> {
    match engine {
        Engine::ValenceRule => {
            if is_modifier(token) {
                None
            } else {
                lexicons.valence.lookup_valence(token).ok().flatten()
            }
        }
        Engine::PatternAvg => lexicons
            .pattern
            .lookup_pattern(token)
            .ok()
            .flatten()
            .filter(|e| !e.is_intensifier)
            .map(|e| e.polarity),
        Engine::Synset => lexicons
            .synset
            .lookup_synsets(token, lexicons.tagger.tag(token))
            .ok()
            .and_then(|senses| senses.first().map(|s| s.net())),
    }
}

pub fn qualifies(engine: Engine, token: &str, side: Side, lexicons: &Lexicons) -> bool {
    match (word_score(engine, token, lexicons), side) {
        (Some(v), Side::Positive) => v > 0.0,
        (Some(v), Side::Negative) => v < 0.0,
        (None, _) => false,
    }
}

/// Most frequent qualifying words among the comments `engine` labeled
/// `side`. Every occurrence counts; ties go to the lexicographically
/// smaller word.
pub fn top_words(
    documents: &[CleanedDocument],
    labeled: &[LabeledComment],
    lexicons: &Lexicons,
    engine: Engine,
    side: Side,
    n: usize,
) -> Result<WordRanking, AnalyticsError> {
    let mut labels: HashMap<&str, PolarityLabel> = HashMap::with_capacity(labeled.len());
    for l in labeled {
        check_engine(engine, l.engine)?;
        labels.insert(l.comment_id.as_str(), l.label);
    }
    let mut freq: HashMap<&str, u64> = HashMap::new();
    for doc in documents.iter().filter(|d| d.is_kept()) {
        if labels.get(doc.comment_id.as_str()) != Some(&side.label()) {
            continue;
        }
        for tok in &doc.tokens {
            if qualifies(engine, tok, side, lexicons) {
                *freq.entry(tok.as_str()).or_insert(0) += 1;
            }
        }
    }
    let mut entries: Vec<(String, u64)> = freq.into_iter().map(|(w, c)| (w.to_string(), c)).collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    entries.truncate(n);
    Ok(WordRanking { engine, side, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn score(engine: Engine, polarity: f64) -> SentimentScore {
        SentimentScore {
            engine,
            polarity,
            subjectivity: None,
            proportions: None,
        }
    }

    fn subj(s: f64) -> SentimentScore {
        SentimentScore {
            engine: Engine::PatternAvg,
            polarity: 0.0,
            subjectivity: Some(s),
            proportions: None,
        }
    }

    #[test]
    fn sign_labels() {
        assert_eq!(label(0.5, 0.0), PolarityLabel::Positive);
        assert_eq!(label(0.0, 0.0), PolarityLabel::Neutral);
        assert_eq!(label(-0.0, 0.0), PolarityLabel::Neutral);
        assert_eq!(label(-0.3, 0.0), PolarityLabel::Negative);
        assert_eq!(label(0.05, 0.1), PolarityLabel::Neutral);
        assert_eq!(label(0.1, 0.1), PolarityLabel::Neutral);
    }

    #[test]
    fn distribution_counts() {
        let labeled: Vec<LabeledComment> = [0.4, 0.9, -0.2, 0.0]
            .iter()
            .enumerate()
            .map(|(i, p)| LabeledComment::new(format!("c{i}"), score(Engine::Synset, *p), 0.0))
            .collect();
        let d = distribution(&labeled, Engine::Synset).unwrap();
        assert_eq!(d.counts, LabelCounts { positive: 2, neutral: 1, negative: 1 });
        assert_eq!(d.proportions, LabelProportions { positive: 0.5, neutral: 0.25, negative: 0.25 });
        assert_eq!(
            distribution(&labeled, Engine::PatternAvg),
            Err(AnalyticsError::MixedEngines { expected: Engine::PatternAvg, found: Engine::Synset })
        );
        let empty = distribution(&[], Engine::Synset).unwrap();
        assert_eq!(empty.counts.total(), 0);
        assert_eq!(empty.proportions, LabelProportions::default());
    }

    #[test]
    fn histogram_boundaries() {
        let h = subjectivity_histogram(&[subj(0.0), subj(0.0), subj(1.0)], 2).unwrap();
        assert_eq!(h.counts, vec![2, 1]);
        assert_eq!(h.mean, Some(1.0 / 3.0));
        assert_eq!(h.median, Some(0.0));
        let h = subjectivity_histogram(&[subj(0.5), subj(0.5000001)], 2).unwrap();
        assert_eq!(h.counts, vec![1, 1]);
        let h = subjectivity_histogram(&[subj(0.3)], 10).unwrap();
        assert_eq!(h.counts[2], 1);
    }

    #[test]
    fn histogram_empty_and_errors() {
        let h = subjectivity_histogram(&[], 10).unwrap();
        assert_eq!(h.counts, vec![0; 10]);
        assert_eq!(h.bin_edges.first(), Some(&0.0));
        assert_eq!(h.bin_edges.last(), Some(&1.0));
        assert_eq!(h.mean, None);
        assert_eq!(
            subjectivity_histogram(&[score(Engine::ValenceRule, 0.1)], 10),
            Err(AnalyticsError::MissingSubjectivity(Engine::ValenceRule))
        );
        assert_eq!(subjectivity_histogram(&[], 0), Err(AnalyticsError::ZeroBins));
    }

    #[test]
    fn top_words_counts_occurrences() {
        let lex = Lexicons::bundled();
        let doc = CleanedDocument {
            comment_id: "a".into(),
            raw_text: None,
            tokens: vec!["great".into(), "great".into(), "win".into(), "wind".into()],
            dropped: None,
        };
        let l = LabeledComment::new("a", score(Engine::ValenceRule, 0.7), 0.0);
        let r = top_words(std::slice::from_ref(&doc), std::slice::from_ref(&l), &lex, Engine::ValenceRule, Side::Positive, 30).unwrap();
        assert_eq!(r.entries, vec![("great".to_string(), 2), ("win".to_string(), 1)]);
        let r = top_words(&[doc], &[l], &lex, Engine::ValenceRule, Side::Negative, 30).unwrap();
        assert!(r.entries.is_empty());
    }

    proptest! {
        #[test]
        fn labels_are_monotone(a in -1.0f64..=1.0, b in -1.0f64..=1.0, eps in 0.0f64..0.5) {
            let rank = |l: PolarityLabel| match l {
                PolarityLabel::Negative => 0,
                PolarityLabel::Neutral => 1,
                PolarityLabel::Positive => 2,
            };
            if a > b {
                prop_assert!(rank(label(a, eps)) >= rank(label(b, eps)));
            }
        }

        #[test]
        fn merge_is_associative(xs in prop::collection::vec(-1.0f64..=1.0, 0..60), cut in 0usize..60) {
            let labeled: Vec<LabeledComment> = xs
                .iter()
                .enumerate()
                .map(|(i, p)| LabeledComment::new(i.to_string(), score(Engine::PatternAvg, *p), 0.0))
                .collect();
            let cut = cut.min(labeled.len());
            let whole = distribution(&labeled, Engine::PatternAvg).unwrap();
            let left = distribution(&labeled[..cut], Engine::PatternAvg).unwrap();
            let right = distribution(&labeled[cut..], Engine::PatternAvg).unwrap();
            prop_assert_eq!(left.merge(&right).unwrap(), whole);
        }
    }
}
