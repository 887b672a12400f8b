//! Pattern-averaging: mean polarity and mean subjectivity of the matched
//! lexicon words.

use super::valence::is_negation;
use super::{require_kind, Engine, EngineError, SentimentScore};
use crate::lexicon::{Lexicon, LexiconKind};

/// Multiplier applied to a word preceded by a negation. Damps rather than
/// fully inverting.
pub const NEGATION_FACTOR: f64 = -0.5;
pub const NEGATION_WINDOW: usize = 3;

/// Per-word polarities and subjectivities that enter the averages.
pub fn pattern_contributions(tokens: &[String], lexicon: &Lexicon) -> Result<Vec<(f64, f64)>, EngineError> {
    require_kind(lexicon, LexiconKind::Pattern)?;
    let mut out = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        let Some(entry) = lexicon.lookup_pattern(tok)? else {
            continue;
        };
        if entry.is_intensifier {
            continue;
        }
        let mut p = entry.polarity;
        if i > 0 {
            if let Some(prev) = lexicon.lookup_pattern(&tokens[i - 1])? {
                if prev.is_intensifier {
                    p *= prev.intensity_factor;
                }
            }
        }
        let lo = i.saturating_sub(NEGATION_WINDOW);
        if tokens[lo..i].iter().any(|t| is_negation(t)) {
            p *= NEGATION_FACTOR;
        }
        out.push((p, entry.subjectivity));
    }
    Ok(out)
}

pub fn score_pattern_avg(tokens: &[String], lexicon: &Lexicon) -> Result<SentimentScore, EngineError> {
    let parts = pattern_contributions(tokens, lexicon)?;
    let (polarity, subjectivity) = if parts.is_empty() {
        (0.0, 0.0)
    } else {
        let n = parts.len() as f64;
        let p = parts.iter().fold(0.0, |acc, (p, _)| acc + p) / n;
        let s = parts.iter().fold(0.0, |acc, (_, s)| acc + s) / n;
        (p.clamp(-1.0, 1.0) + 0.0, s.clamp(0.0, 1.0) + 0.0)
    };
    Ok(SentimentScore {
        engine: Engine::PatternAvg,
        polarity,
        subjectivity: Some(subjectivity),
        proportions: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    fn score(s: &str) -> (f64, f64) {
        let r = score_pattern_avg(&toks(s), &Lexicon::bundled(LexiconKind::Pattern)).unwrap();
        (r.polarity, r.subjectivity.unwrap())
    }

    #[test]
    fn zero_match() {
        assert_eq!(score("zzz qqq"), (0.0, 0.0));
        assert_eq!(score(""), (0.0, 0.0));
    }

    #[test]
    fn great_awful() {
        let (p, s) = score("great awful");
        assert_eq!(p, (0.8 + -1.0) / 2.0);
        assert!((p - -0.1).abs() < 1e-12);
        assert_eq!(s, (0.75 + 1.0) / 2.0);
    }

    #[test]
    fn intensifier_scales_next_word_only() {
        let (p, _) = score("very great");
        assert_eq!(p, (0.8f64 * 1.3).clamp(-1.0, 1.0));
        let (p, _) = score("very wind great");
        assert_eq!(p, 0.8);
    }

    #[test]
    fn intensifier_alone_is_not_a_match() {
        assert_eq!(score("very"), (0.0, 0.0));
    }

    #[test]
    fn negation_damps() {
        let (p, _) = score("not great");
        assert_eq!(p, 0.8 * -0.5);
    }

    #[test]
    fn opinion_outranks_fact() {
        let opinion = score("like offshore wind energy boring").1;
        let fact = score("offshore wind cost current lower").1;
        assert!(opinion > fact, "{opinion} vs {fact}");
    }
}
