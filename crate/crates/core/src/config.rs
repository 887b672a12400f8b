//! Run configuration, and the flat `key = value` config file format.
//!
//! A config file holds one setting per line; blank lines and lines starting
//! with `#` are ignored. Relative paths are resolved against the directory
//! containing the config file. Command-line flags take precedence over file
//! values, which take precedence over the defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::corpus::{CorpusFormat, ParseMode};
use crate::engines::{Disambiguation, PipelineMode, ValenceRuleConfig, PATTERN_FILE, SYNSET_FILE, VALENCE_FILE};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: CorpusFormat,
    /// Directory holding `valence.tsv`, `pattern.tsv` and `synsets.tsv`;
    /// `None` selects the bundled lexicons.
    pub lexicon_dir: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub lemmas: Option<PathBuf>,
    pub mode: PipelineMode,
    pub disambiguation: Disambiguation,
    pub epsilon: f64,
    pub top_n: usize,
    pub min_token_count: usize,
    pub stemming: bool,
    pub lemmatization: bool,
    pub parse_mode: ParseMode,
    pub out_dir: Option<PathBuf>,
    pub plots: bool,
    pub valence: ValenceRuleConfig,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, format: CorpusFormat) -> Self {
        RunConfig {
            input: input.into(),
            format,
            lexicon_dir: None,
            stopwords: None,
            lemmas: None,
            mode: PipelineMode::default(),
            disambiguation: Disambiguation::default(),
            epsilon: 0.0,
            top_n: 30,
            min_token_count: 3,
            stemming: false,
            lemmatization: true,
            parse_mode: ParseMode::Strict,
            out_dir: None,
            plots: false,
            valence: ValenceRuleConfig::default(),
        }
    }

    /// Checks value ranges and that every referenced input path exists.
    pub fn validate(&self) -> Result<(), Error> {
        if !self.input.is_file() {
            return Err(Error::Config(format!("input file {} does not exist", self.input.display())));
        }
        if let Some(dir) = &self.lexicon_dir {
            for name in [VALENCE_FILE, PATTERN_FILE, SYNSET_FILE] {
                let p = dir.join(name);
                if !p.is_file() {
                    return Err(Error::Config(format!("lexicon file {} does not exist", p.display())));
                }
            }
        }
        for p in [&self.stopwords, &self.lemmas].into_iter().flatten() {
            if !p.is_file() {
                return Err(Error::Config(format!("file {} does not exist", p.display())));
            }
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::Config("epsilon must be a finite number >= 0".into()));
        }
        if self.top_n == 0 {
            return Err(Error::Config("top_n must be at least 1".into()));
        }
        if self.min_token_count == 0 {
            return Err(Error::Config("min_tokens must be at least 1".into()));
        }
        self.valence.validate()?;
        Ok(())
    }
}

/// Settings collected from one source (file or flags). Unset fields fall
/// through to the next source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigValues {
    pub input: Option<PathBuf>,
    pub format: Option<CorpusFormat>,
    pub lexicon_dir: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub lemmas: Option<PathBuf>,
    pub mode: Option<PipelineMode>,
    pub disambiguation: Option<Disambiguation>,
    pub epsilon: Option<f64>,
    pub top_n: Option<usize>,
    pub min_token_count: Option<usize>,
    pub stemming: Option<bool>,
    pub lemmatization: Option<bool>,
    pub lenient: Option<bool>,
    pub out_dir: Option<PathBuf>,
    pub plots: Option<bool>,
    pub negation_window: Option<usize>,
    pub negation_factor: Option<f64>,
    pub booster_increment: Option<f64>,
    pub caps_increment: Option<f64>,
    pub exclamation_increment: Option<f64>,
    pub max_exclamations: Option<usize>,
    pub but_discount: Option<f64>,
    pub but_boost: Option<f64>,
    pub normalization_alpha: Option<f64>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, Error> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!("invalid value {value:?} for {key} (expected true or false)"))),
    }
}

/// Splits config file text into key/value pairs.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim().replace('-', "_");
        if out.insert(k.clone(), v.trim().to_string()).is_some() {
            return Err(Error::Config(format!("config line {}: {k} set twice", i + 1)));
        }
    }
    Ok(out)
}

impl ConfigValues {
    /// Parses config file text. Relative paths are joined onto `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, Error> {
        let path = |v: &str| base.join(v);
        let mut c = ConfigValues::default();
        for (k, v) in parse_pairs(text)? {
            let v = v.as_str();
            match k.as_str() {
                "input" => c.input = Some(path(v)),
                "format" => {
                    c.format = Some(v.parse().map_err(|_| Error::Config(format!("unknown format {v:?}")))?)
                }
                "lexicons" => c.lexicon_dir = Some(path(v)),
                "stopwords" => c.stopwords = Some(path(v)),
                "lemmas" => c.lemmas = Some(path(v)),
                "mode" => c.mode = Some(v.parse().map_err(Error::Config)?),
                "disambiguation" => c.disambiguation = Some(v.parse().map_err(Error::Config)?),
                "epsilon" => c.epsilon = Some(parse_value(&k, v)?),
                "top_n" => c.top_n = Some(parse_value(&k, v)?),
                "min_tokens" => c.min_token_count = Some(parse_value(&k, v)?),
                "stem" => c.stemming = Some(parse_bool(&k, v)?),
                "lemmatize" => c.lemmatization = Some(parse_bool(&k, v)?),
                "lenient" => c.lenient = Some(parse_bool(&k, v)?),
                "out" => c.out_dir = Some(path(v)),
                "plots" => c.plots = Some(parse_bool(&k, v)?),
                "negation_window" => c.negation_window = Some(parse_value(&k, v)?),
                "negation_factor" => c.negation_factor = Some(parse_value(&k, v)?),
                "booster_increment" => c.booster_increment = Some(parse_value(&k, v)?),
                "caps_increment" => c.caps_increment = Some(parse_value(&k, v)?),
                "exclamation_increment" => c.exclamation_increment = Some(parse_value(&k, v)?),
                "max_exclamations" => c.max_exclamations = Some(parse_value(&k, v)?),
                "but_discount" => c.but_discount = Some(parse_value(&k, v)?),
                "but_boost" => c.but_boost = Some(parse_value(&k, v)?),
                "normalization_alpha" => c.normalization_alpha = Some(parse_value(&k, v)?),
                other => return Err(Error::Config(format!("unknown config key {other:?}"))),
            }
        }
        Ok(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, Error> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
        ConfigValues::parse(&text, path.parent().unwrap_or(Path::new("")))
    }

    /// Field-wise: values set in `self` win over `fallback`.
    pub fn or(self, fallback: ConfigValues) -> ConfigValues {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigValues { $($f: self.$f.or(fallback.$f)),* } };
        }
        pick!(
            input, format, lexicon_dir, stopwords, lemmas, mode, disambiguation, epsilon, top_n,
            min_token_count, stemming, lemmatization, lenient, out_dir, plots, negation_window,
            negation_factor, booster_increment, caps_increment, exclamation_increment,
            max_exclamations, but_discount, but_boost, normalization_alpha
        )
    }

    /// Fills in defaults. The input path is required.
    pub fn into_run_config(self) -> Result<RunConfig, Error> {
        let input = self.input.ok_or_else(|| Error::Config("no input file given".into()))?;
        let format = match self.format {
            Some(f) => f,
            None => guess_format(&input)?,
        };
        let mut rc = RunConfig::new(input, format);
        let d = ValenceRuleConfig::default();
        rc.lexicon_dir = self.lexicon_dir;
        rc.stopwords = self.stopwords;
        rc.lemmas = self.lemmas;
        rc.mode = self.mode.unwrap_or_default();
        rc.disambiguation = self.disambiguation.unwrap_or_default();
        rc.epsilon = self.epsilon.unwrap_or(rc.epsilon);
        rc.top_n = self.top_n.unwrap_or(rc.top_n);
        rc.min_token_count = self.min_token_count.unwrap_or(rc.min_token_count);
        rc.stemming = self.stemming.unwrap_or(rc.stemming);
        rc.lemmatization = self.lemmatization.unwrap_or(rc.lemmatization);
        if self.lenient.unwrap_or(false) {
            rc.parse_mode = ParseMode::Lenient;
        }
        rc.out_dir = self.out_dir;
        rc.plots = self.plots.unwrap_or(false);
        rc.valence = ValenceRuleConfig {
            negation_window: self.negation_window.unwrap_or(d.negation_window),
            negation_factor: self.negation_factor.unwrap_or(d.negation_factor),
            booster_increment: self.booster_increment.unwrap_or(d.booster_increment),
            caps_increment: self.caps_increment.unwrap_or(d.caps_increment),
            exclamation_increment: self.exclamation_increment.unwrap_or(d.exclamation_increment),
            max_exclamations: self.max_exclamations.unwrap_or(d.max_exclamations),
            but_discount: self.but_discount.unwrap_or(d.but_discount),
            but_boost: self.but_boost.unwrap_or(d.but_boost),
            normalization_alpha: self.normalization_alpha.unwrap_or(d.normalization_alpha),
        };
        Ok(rc)
    }
}

fn guess_format(input: &Path) -> Result<CorpusFormat, Error> {
    match input.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(CorpusFormat::Csv),
        Some("jsonl") | Some("ndjson") => Ok(CorpusFormat::Jsonl),
        _ => Err(Error::Config(format!(
            "cannot tell the format of {}; pass --format csv|jsonl",
            input.display()
        ))),
    }
}
