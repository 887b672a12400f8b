use std::collections::{HashMap, HashSet};

use crate::lexicon::PosTag;

use super::PreprocessError;

const BUNDLED_LEMMAS: &str = include_str!("../../data/lemmas.tsv");

// Upper bound on table/rule rewrites for one token; every rule shortens the
// token, so real inputs settle in one or two steps.
const MAX_REWRITES: usize = 8;

/// Dictionary-backed lemmatizer with suffix-rule fallback.
///
/// Lookup order for each rewrite step: the inflection table, then the set of
/// known lemmas (which are returned unchanged), then the suffix rules for the
/// part of speech. Steps repeat until the token stops changing, so
/// `lemmatize(lemmatize(t)) == lemmatize(t)` for every token.
#[derive(Debug, Clone, Default)]
pub struct LemmaTable {
    forms: HashMap<String, String>,
    lemmas: HashSet<String>,
}

impl LemmaTable {
    /// Parses `inflected<TAB>lemma` lines.
    pub fn parse(text: &str) -> Result<Self, PreprocessError> {
        let mut forms = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (form, lemma) = line
                .split_once('\t')
                .map(|(a, b)| (a.trim(), b.trim()))
                .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains('\t'))
                .ok_or_else(|| PreprocessError::MalformedLemma {
                    line: i + 1,
                    reason: "expected inflected<TAB>lemma".into(),
                })?;
            if forms.insert(form.to_string(), lemma.to_string()).is_some() {
                return Err(PreprocessError::MalformedLemma {
                    line: i + 1,
                    reason: format!("duplicate inflected form {form:?}"),
                });
            }
        }
        let lemmas: HashSet<String> = forms.values().cloned().collect();
        for lemma in &lemmas {
            if let Some(other) = forms.get(lemma) {
                if other != lemma {
                    return Err(PreprocessError::MalformedLemma {
                        line: 0,
                        reason: format!("lemma {lemma:?} is itself listed as an inflection of {other:?}"),
                    });
                }
            }
        }
        Ok(LemmaTable { forms, lemmas })
    }

    pub fn bundled() -> Self {
        LemmaTable::parse(BUNDLED_LEMMAS).expect("bundled lemma table is valid")
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn lookup(&self, form: &str) -> Option<&str> {
        self.forms.get(form).map(String::as_str)
    }

    /// Lemma of `token`. Without a hint the token is treated as a noun.
    pub fn lemmatize(&self, token: &str, pos_hint: Option<PosTag>) -> String {
        let mut current = token.to_string();
        for _ in 0..MAX_REWRITES {
            let next = self.step(&current, pos_hint.unwrap_or(PosTag::Noun));
            if next == current {
                break;
            }
            current = next;
        }
        current
    }

    fn step(&self, token: &str, pos: PosTag) -> String {
        if let Some(lemma) = self.forms.get(token) {
            return lemma.clone();
        }
        if self.lemmas.contains(token) {
            return token.to_string();
        }
        match pos {
            PosTag::Noun => noun_rule(token),
            PosTag::Verb => verb_rule(token),
            PosTag::Adj | PosTag::Adv => token.to_string(),
        }
    }
}

fn char_len(s: &str) -> usize {
    s.chars().count()
}

fn noun_rule(t: &str) -> String {
    if char_len(t) > 4 && t.ends_with("ies") {
        return format!("{}y", &t[..t.len() - 3]);
    }
    if t.ends_with("sses") {
        return t[..t.len() - 2].to_string();
    }
    for suffix in ["ches", "shes", "xes"] {
        if t.ends_with(suffix) && char_len(t) > suffix.len() {
            return t[..t.len() - 2].to_string();
        }
    }
    if t.ends_with('s') && char_len(t) > 3 && !(t.ends_with("ss") || t.ends_with("us") || t.ends_with("is")) {
        return t[..t.len() - 1].to_string();
    }
    t.to_string()
}

fn has_vowel(s: &str) -> bool {
    s.bytes().any(|b| b"aeiou".contains(&b))
}

fn undouble(stem: &str) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 2 && b[n - 1] == b[n - 2] && b[n - 1].is_ascii_lowercase() && !b"aeiouslz".contains(&b[n - 1]) {
        stem[..n - 1].to_string()
    } else {
        stem.to_string()
    }
}

fn verb_rule(t: &str) -> String {
    if char_len(t) > 4 && t.ends_with("ies") {
        return format!("{}y", &t[..t.len() - 3]);
    }
    for suffix in ["sses", "ches", "shes", "xes"] {
        if t.ends_with(suffix) {
            return t[..t.len() - 2].to_string();
        }
    }
    if t.ends_with('s') && char_len(t) > 3 && !(t.ends_with("ss") || t.ends_with("us") || t.ends_with("is")) {
        return t[..t.len() - 1].to_string();
    }
    for suffix in ["ing", "ed"] {
        if let Some(stem) = t.strip_suffix(suffix) {
            if char_len(stem) >= 3 && has_vowel(stem) {
                return undouble(stem);
            }
        }
    }
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plural_rules() {
        let t = LemmaTable::bundled();
        assert_eq!(t.lemmatize("turbines", None), "turbine");
        assert_eq!(t.lemmatize("whales", None), "whale");
        assert_eq!(t.lemmatize("energies", None), "energy");
        assert_eq!(t.lemmatize("beaches", None), "beach");
        assert_eq!(t.lemmatize("taxes", None), "tax");
        assert_eq!(t.lemmatize("glasses", None), "glass");
        assert_eq!(t.lemmatize("bonus", None), "bonus");
        assert_eq!(t.lemmatize("crisis", None), "crisis");
        assert_eq!(t.lemmatize("gas", None), "gas");
    }

    #[test]
    fn fixpoints() {
        let t = LemmaTable::bundled();
        for w in ["wind", "turbine", "energy", "killing", "clean"] {
            assert_eq!(t.lemmatize(w, None), w);
        }
    }

    #[test]
    fn table_lookup() {
        let t = LemmaTable::bundled();
        assert_eq!(t.lookup("turbines"), None);
        assert_eq!(t.lemmatize("running", Some(PosTag::Verb)), "run");
        assert_eq!(t.lemmatize("children", None), "child");
        assert_eq!(t.lemmatize("species", None), "species");
        assert_eq!(t.lemmatize("childrens", None), "child");
    }

    #[test]
    fn verb_rules_need_a_hint() {
        let t = LemmaTable::bundled();
        assert_eq!(t.lemmatize("killing", None), "killing");
        assert_eq!(t.lemmatize("killing", Some(PosTag::Verb)), "kill");
        assert_eq!(t.lemmatize("stopped", Some(PosTag::Verb)), "stop");
        assert_eq!(t.lemmatize("sing", Some(PosTag::Verb)), "sing");
        assert_eq!(t.lemmatize("happier", Some(PosTag::Adj)), "happier");
    }

    #[test]
    fn every_table_lemma_is_a_fixpoint() {
        let t = LemmaTable::bundled();
        for lemma in t.forms.values() {
            for pos in [None, Some(PosTag::Verb)] {
                assert_eq!(&t.lemmatize(lemma, pos), lemma);
            }
        }
    }

    #[test]
    fn rejects_chained_entries() {
        assert!(LemmaTable::parse("a\tb\nb\tc\n").is_err());
        assert!(LemmaTable::parse("a\tb\nb\tb\n").is_ok());
        assert!(LemmaTable::parse("justoneword\n").is_err());
    }

    #[test]
    fn non_ascii_tokens_are_safe() {
        let t = LemmaTable::bundled();
        assert_eq!(t.lemmatize("cafés", None), "café");
        assert_eq!(t.lemmatize("ñies", None), "ñie");
        assert_eq!(t.lemmatize("ñoñies", None), "ñoñy");
    }
}
