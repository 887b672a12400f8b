//! Valence-rule scoring: summed word valences with negation, booster,
//! contrast ("but"), capitalization and exclamation heuristics, squashed
//! into [-1, 1].

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{require_kind, Engine, EngineError, Proportions, SentimentScore};
use crate::lexicon::{Lexicon, LexiconKind};

/// Negation words. Contractions appear in their punctuation-stripped form
/// (`don't` -> `dont`, and a detached `n't` -> `nt`).
pub const NEGATIONS: [&str; 32] = [
    "not", "no", "never", "nt", "neither", "nor", "cannot", "cant", "dont", "doesnt", "didnt", "isnt",
    "arent", "wasnt", "werent", "wont", "wouldnt", "couldnt", "shouldnt", "hasnt", "havent", "hadnt",
    "aint", "mustnt", "neednt", "mightnt", "shant", "without", "nothing", "nobody", "none", "nowhere",
];

/// Boosters that raise the magnitude of the following word.
pub const BOOST_UP: [&str; 39] = [
    "absolutely", "amazingly", "completely", "considerably", "decidedly", "deeply", "enormously",
    "entirely", "especially", "exceptionally", "extremely", "fabulously", "fully", "greatly", "highly",
    "hugely", "incredibly", "intensely", "majorly", "more", "most", "much", "particularly", "purely",
    "quite", "really", "remarkably", "so", "substantially", "thoroughly", "too", "totally",
    "tremendously", "truly", "uber", "unbelievably", "unusually", "utterly", "very",
];

/// Dampeners that lower the magnitude of the following word.
pub const BOOST_DOWN: [&str; 14] = [
    "almost", "barely", "bit", "hardly", "kinda", "less", "little", "marginally", "occasionally",
    "partly", "scarcely", "slightly", "somewhat", "sorta",
];

pub const CONTRAST: &str = "but";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValenceRuleConfig {
    pub negation_window: usize,
    pub negation_factor: f64,
    pub booster_increment: f64,
    pub caps_increment: f64,
    pub exclamation_increment: f64,
    pub max_exclamations: usize,
    pub but_discount: f64,
    pub but_boost: f64,
    pub normalization_alpha: f64,
}

impl Default for ValenceRuleConfig {
    fn default() -> Self {
        ValenceRuleConfig {
            negation_window: 3,
            negation_factor: -0.74,
            booster_increment: 0.293,
            caps_increment: 0.733,
            exclamation_increment: 0.292,
            max_exclamations: 4,
            but_discount: 0.5,
            but_boost: 1.5,
            normalization_alpha: 15.0,
        }
    }
}

impl ValenceRuleConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        let finite = [
            ("negation_factor", self.negation_factor),
            ("booster_increment", self.booster_increment),
            ("caps_increment", self.caps_increment),
            ("exclamation_increment", self.exclamation_increment),
            ("but_discount", self.but_discount),
            ("but_boost", self.but_boost),
            ("normalization_alpha", self.normalization_alpha),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(EngineError::InvalidConfig(format!("{name} must be finite")));
            }
        }
        for (name, v) in &finite[1..4] {
            if *v < 0.0 {
                return Err(EngineError::InvalidConfig(format!("{name} must be >= 0")));
            }
        }
        if self.normalization_alpha <= 0.0 {
            return Err(EngineError::InvalidConfig("normalization_alpha must be > 0".into()));
        }
        Ok(())
    }
}

pub fn is_negation(token: &str) -> bool {
    NEGATIONS.contains(&token)
}

/// Signed booster increment for `token`, if it is a booster or dampener.
pub fn booster_increment(token: &str, magnitude: f64) -> Option<f64> {
    if BOOST_UP.contains(&token) {
        Some(magnitude)
    } else if BOOST_DOWN.contains(&token) {
        Some(-magnitude)
    } else {
        None
    }
}

/// Negations, boosters and the contrast word modify other words and never
/// carry valence themselves.
pub fn is_modifier(token: &str) -> bool {
    is_negation(token) || booster_increment(token, 1.0).is_some() || token == CONTRAST
}

/// `s / sqrt(s^2 + alpha)`, clamped to [-1, 1].
pub fn compound_from_sum(s: f64, alpha: f64) -> f64 {
    (s / (s * s + alpha).sqrt()).clamp(-1.0, 1.0) + 0.0
}

/// Intermediate values of one valence-rule evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ValenceBreakdown {
    /// Adjusted valence per token; 0.0 for unmatched tokens and modifiers.
    pub contributions: Vec<f64>,
    /// Sum of contributions, before exclamation emphasis.
    pub raw_sum: f64,
    pub emphasis: f64,
    pub compound: f64,
    pub proportions: Proportions,
}

fn caps_words(raw: &str) -> HashSet<String> {
    let words: Vec<String> = raw
        .split_whitespace()
        .map(|w| w.chars().filter(|c| !c.is_ascii_punctuation()).collect::<String>())
        .filter(|w| w.chars().count() > 1)
        .collect();
    let upper: Vec<&String> = words
        .iter()
        .filter(|w| w.chars().any(|c| c.is_uppercase() || c.is_lowercase()) && !w.chars().any(char::is_lowercase))
        .collect();
    if upper.is_empty() || upper.len() == words.len() {
        return HashSet::new();
    }
    upper.into_iter().map(|w| w.to_lowercase()).collect()
}

/// Runs the valence rules. `raw` enables the capitalization and exclamation
/// heuristics; pass `None` to score cleaned tokens alone.
pub fn valence_breakdown(
    raw: Option<&str>,
    tokens: &[String],
    lexicon: &Lexicon,
    config: &ValenceRuleConfig,
) -> Result<ValenceBreakdown, EngineError> {
    require_kind(lexicon, LexiconKind::Valence)?;
    let (caps, exclamations) = match raw {
        Some(r) => (caps_words(r), r.matches('!').count()),
        None => (HashSet::new(), 0),
    };
    let but_at = tokens.iter().position(|t| t == CONTRAST);

    let mut contributions = Vec::with_capacity(tokens.len());
    for (i, tok) in tokens.iter().enumerate() {
        let valence = if is_modifier(tok) {
            None
        } else {
            lexicon.lookup_valence(tok)?.filter(|v| *v != 0.0)
        };
        let Some(mut v) = valence else {
            contributions.push(0.0);
            continue;
        };
        if caps.contains(tok.as_str()) {
            if v > 0.0 {
                v += config.caps_increment;
            } else {
                v -= config.caps_increment;
            }
        }
        for prev in tokens[..i].iter().rev() {
            let Some(inc) = booster_increment(prev, config.booster_increment) else {
                break;
            };
            v += if v < 0.0 { -inc } else { inc };
        }
        let lo = i.saturating_sub(config.negation_window);
        if tokens[lo..i].iter().any(|t| is_negation(t)) {
            v *= config.negation_factor;
        }
        if let Some(b) = but_at {
            if i < b {
                v *= config.but_discount;
            } else if i > b {
                v *= config.but_boost;
            }
        }
        contributions.push(v);
    }

    let raw_sum = contributions.iter().fold(0.0, |acc, x| acc + x);
    let emphasis = if exclamations > 0 {
        exclamations.min(config.max_exclamations) as f64 * config.exclamation_increment
    } else {
        0.0
    };
    let s = if raw_sum > 0.0 {
        raw_sum + emphasis
    } else if raw_sum < 0.0 {
        raw_sum - emphasis
    } else {
        raw_sum
    };
    let compound = compound_from_sum(s, config.normalization_alpha);

    let (mut pos, mut neg, mut neu) = (0.0, 0.0, 0.0);
    for &x in &contributions {
        if x > 0.0 {
            pos += x + 1.0;
        } else if x < 0.0 {
            neg += x - 1.0;
        } else {
            neu += 1.0;
        }
    }
    if emphasis > 0.0 {
        if pos > f64::abs(neg) {
            pos += emphasis;
        } else if pos < f64::abs(neg) {
            neg -= emphasis;
        }
    }
    let total = pos + f64::abs(neg) + neu;
    let proportions = if total == 0.0 {
        Proportions::all_neutral()
    } else {
        Proportions {
            positive: pos / total,
            neutral: neu / total,
            negative: f64::abs(neg) / total,
        }
    };
    Ok(ValenceBreakdown {
        contributions,
        raw_sum,
        emphasis,
        compound,
        proportions,
    })
}

pub fn score_valence_rule(
    raw: Option<&str>,
    tokens: &[String],
    lexicon: &Lexicon,
    config: &ValenceRuleConfig,
) -> Result<SentimentScore, EngineError> {
    let b = valence_breakdown(raw, tokens, lexicon, config)?;
    Ok(SentimentScore {
        engine: Engine::ValenceRule,
        polarity: b.compound,
        subjectivity: None,
        proportions: Some(b.proportions),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    fn lex() -> Lexicon {
        Lexicon::bundled(LexiconKind::Valence)
    }

    fn compound(s: &str) -> f64 {
        score_valence_rule(None, &toks(s), &lex(), &ValenceRuleConfig::default())
            .unwrap()
            .polarity
    }

    #[test]
    fn word_lists_are_disjoint() {
        for n in NEGATIONS {
            assert!(!BOOST_UP.contains(&n) && !BOOST_DOWN.contains(&n), "{n}");
        }
        for b in BOOST_UP {
            assert!(!BOOST_DOWN.contains(&b), "{b}");
        }
    }

    #[test]
    fn empty_input() {
        let s = score_valence_rule(None, &[], &lex(), &ValenceRuleConfig::default()).unwrap();
        assert_eq!(s.polarity, 0.0);
        assert_eq!(s.proportions, Some(Proportions::all_neutral()));
    }

    #[test]
    fn single_good() {
        let expected = 1.9 / (1.9f64 * 1.9 + 15.0).sqrt();
        assert_eq!(compound("good"), expected);
        assert!((compound("good") - 0.4404).abs() < 1e-4);
    }

    #[test]
    fn not_good_flips_and_damps() {
        let b = valence_breakdown(None, &toks("not good"), &lex(), &ValenceRuleConfig::default()).unwrap();
        assert_eq!(b.raw_sum, 1.9 * -0.74);
        assert!(b.compound < 0.0);
    }

    #[test]
    fn negation_window_is_three_tokens() {
        assert!(compound("not wind farm energy good") > 0.0);
        assert!(compound("not farm energy good") < 0.0);
    }

    #[test]
    fn boosters_chain() {
        let cfg = ValenceRuleConfig::default();
        let b = valence_breakdown(None, &toks("really very good"), &lex(), &cfg).unwrap();
        assert_eq!(b.contributions[2], 1.9 + 0.293 + 0.293);
        let b = valence_breakdown(None, &toks("slightly terrible"), &lex(), &cfg).unwrap();
        assert_eq!(b.contributions[1], -2.1 + 0.293);
    }

    #[test]
    fn but_reweights() {
        let cfg = ValenceRuleConfig::default();
        let b = valence_breakdown(None, &toks("good but terrible"), &lex(), &cfg).unwrap();
        assert_eq!(b.contributions, vec![1.9 * 0.5, 0.0, -2.1 * 1.5]);
    }

    #[test]
    fn caps_and_exclamations_need_raw_text() {
        let cfg = ValenceRuleConfig::default();
        let t = toks("wind good");
        let plain = valence_breakdown(None, &t, &lex(), &cfg).unwrap();
        let native = valence_breakdown(Some("wind GOOD!!"), &t, &lex(), &cfg).unwrap();
        assert_eq!(native.contributions[1], 1.9 + 0.733);
        assert_eq!(native.emphasis, 2.0 * 0.292);
        assert!(native.compound > plain.compound);
        let shouting = valence_breakdown(Some("WIND GOOD"), &t, &lex(), &cfg).unwrap();
        assert_eq!(shouting.contributions[1], 1.9);
    }

    #[test]
    fn exclamations_saturate() {
        let cfg = ValenceRuleConfig::default();
        let t = toks("good");
        let at = |n: usize| {
            let raw = format!("good{}", "!".repeat(n));
            valence_breakdown(Some(&raw), &t, &lex(), &cfg).unwrap().compound
        };
        for n in 0..4 {
            assert!(at(n + 1) > at(n));
        }
        assert_eq!(at(4), at(9));
    }

    #[test]
    fn config_validation() {
        assert!(ValenceRuleConfig::default().validate().is_ok());
        let bad = ValenceRuleConfig {
            normalization_alpha: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ValenceRuleConfig {
            booster_increment: -1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn wrong_lexicon_kind() {
        let p = Lexicon::bundled(LexiconKind::Pattern);
        assert!(score_valence_rule(None, &toks("good"), &p, &ValenceRuleConfig::default()).is_err());
    }

    proptest! {
        #[test]
        fn compound_is_odd_and_monotone(a in -50.0f64..50.0, b in -50.0f64..50.0) {
            prop_assert_eq!(compound_from_sum(-a, 15.0), -compound_from_sum(a, 15.0));
            prop_assert!(compound_from_sum(a, 15.0).abs() < 1.0);
            if a < b {
                prop_assert!(compound_from_sum(a, 15.0) <= compound_from_sum(b, 15.0));
            }
        }

        #[test]
        fn booster_never_lowers_positive_word(
            idx in 0usize..64,
            boost in prop::sample::select(BOOST_UP.to_vec()),
            prefix in prop::collection::vec(prop::sample::select(vec!["wind", "good", "farm", "terrible", "energy"]), 0..5),
        ) {
            let lex = lex();
            let positives: Vec<String> = lex
                .valence_entries()
                .unwrap()
                .filter(|e| e.valence > 0.0 && !is_modifier(&e.word))
                .map(|e| e.word.clone())
                .collect();
            let word = positives[idx % positives.len()].clone();
            let mut without: Vec<String> = prefix.iter().map(|s| s.to_string()).collect();
            let mut with = without.clone();
            without.push(word.clone());
            with.push(boost.to_string());
            with.push(word);
            let cfg = ValenceRuleConfig::default();
            let a = score_valence_rule(None, &without, &lex, &cfg).unwrap().polarity;
            let b = score_valence_rule(None, &with, &lex, &cfg).unwrap().polarity;
            prop_assert!(b >= a, "{:?} {} -> {:?} {}", without, a, with, b);
        }
    }
}
