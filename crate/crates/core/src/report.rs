//! End-to-end runs: load, clean, score, label, aggregate, and write the
//! report files.

use std::collections::BTreeMap;
use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analytics::{
    distribution, subjectivity_histogram, top_words, DistributionReport, LabeledComment, PolarityLabel, Side,
    SubjectivityHistogram, WordRanking, DEFAULT_BINS,
};
use crate::config::RunConfig;
use crate::corpus::{load_corpus_with, write_skip_report, CommentCollection, SkippedRecord};
use crate::engines::{
    score_all, Disambiguation, Engine, EngineConfig, Lexicons, PipelineMode, ScoreTriple, PATTERN_FILE, POS_TAG_FILE,
    SYNSET_FILE, VALENCE_FILE,
};
use crate::error::Error;
use crate::lexicon::{Lexicon, LexiconKind};
use crate::plot;
use crate::preprocess::{preprocess_corpus, CleanedDocument, DropReason, LemmaTable, PreprocessConfig, Stopwords};

pub const REPORT_FILE: &str = "report.json";
pub const COMMENTS_FILE: &str = "comments.csv";
pub const CLEANED_FILE: &str = "cleaned.jsonl";
pub const SKIPPED_FILE: &str = "skipped.jsonl";
pub const PLOT_DIR: &str = "plots";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    /// SHA-256 over the settings and the contents of every input file.
    pub config_digest: String,
    pub mode: PipelineMode,
    pub disambiguation: Disambiguation,
    pub epsilon: f64,
    pub top_n: usize,
    pub corpus_size: usize,
    pub kept: usize,
    pub dropped: usize,
    pub skipped_records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineLabels {
    pub valence_rule: PolarityLabel,
    pub pattern_avg: PolarityLabel,
    pub synset: PolarityLabel,
}

impl EngineLabels {
    pub fn get(&self, engine: Engine) -> PolarityLabel {
        match engine {
            Engine::ValenceRule => self.valence_rule,
            Engine::PatternAvg => self.pattern_avg,
            Engine::Synset => self.synset,
        }
    }
}

/// Scores and labels of one kept comment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommentRow {
    pub id: String,
    pub tokens: Vec<String>,
    pub scores: ScoreTriple,
    pub labels: EngineLabels,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedRow {
    pub id: String,
    pub reason: DropReason,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub meta: RunMeta,
    pub distributions: BTreeMap<Engine, DistributionReport>,
    pub histogram: SubjectivityHistogram,
    /// Three engines times two sides, engine-major.
    pub rankings: Vec<WordRanking>,
    pub comments: Vec<CommentRow>,
    pub dropped: Vec<DroppedRow>,
}

impl AnalysisReport {
    pub fn ranking(&self, engine: Engine, side: Side) -> Option<&WordRanking> {
        self.rankings.iter().find(|r| r.engine == engine && r.side == side)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Everything needed to analyze an in-memory collection.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub preprocess: PreprocessConfig,
    pub lexicons: Lexicons,
    pub engines: EngineConfig,
    pub epsilon: f64,
    pub top_n: usize,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            preprocess: PreprocessConfig::default(),
            lexicons: Lexicons::bundled(),
            engines: EngineConfig::default(),
            epsilon: 0.0,
            top_n: 30,
        }
    }
}

impl Pipeline {
    /// Loads lexicons and word lists named by `config`.
    pub fn from_config(config: &RunConfig) -> Result<Self, Error> {
        let lexicons = match &config.lexicon_dir {
            Some(dir) => Lexicons::from_dir(dir)?,
            None => Lexicons::bundled(),
        };
        let stopwords = match &config.stopwords {
            Some(p) => Stopwords::load(p)?,
            None => Stopwords::bundled(),
        };
        let lemmas = match &config.lemmas {
            Some(p) => LemmaTable::load(p)?,
            None => LemmaTable::bundled(),
        };
        let min_token_count = NonZeroUsize::new(config.min_token_count)
            .ok_or_else(|| Error::Config("min_tokens must be at least 1".into()))?;
        Ok(Pipeline {
            preprocess: PreprocessConfig {
                stopwords,
                lemmas,
                min_token_count,
                apply_stemming: config.stemming,
                apply_lemmatization: config.lemmatization,
            },
            lexicons,
            engines: EngineConfig {
                valence: config.valence.clone(),
                disambiguation: config.disambiguation,
                mode: config.mode,
            },
            epsilon: config.epsilon,
            top_n: config.top_n,
        })
    }

    /// Scores every kept document, in order. Dropped documents map to `None`.
    pub fn score(&self, documents: &[CleanedDocument]) -> Result<Vec<Option<ScoreTriple>>, Error> {
        documents
            .par_iter()
            .map(|d| {
                if d.is_dropped() {
                    Ok(None)
                } else {
                    score_all(d, &self.lexicons, &self.engines).map(Some).map_err(Error::from)
                }
            })
            .collect()
    }

    pub fn analyze(&self, collection: &CommentCollection, config_digest: &str, skipped_records: usize) -> Result<AnalysisReport, Error> {
        self.engines.valence.validate()?;
        let documents = preprocess_corpus(collection, &self.preprocess);
        let scores = self.score(&documents)?;

        let mut comments = Vec::new();
        let mut dropped = Vec::new();
        let mut labeled: BTreeMap<Engine, Vec<LabeledComment>> = BTreeMap::new();
        for (doc, score) in documents.iter().zip(scores) {
            let Some(scores) = score else {
                dropped.push(DroppedRow {
                    id: doc.comment_id.clone(),
                    reason: doc.dropped.expect("unscored documents are dropped"),
                });
                continue;
            };
            for e in Engine::ALL {
                labeled
                    .entry(e)
                    .or_default()
                    .push(LabeledComment::new(doc.comment_id.clone(), scores.get(e).clone(), self.epsilon));
            }
            let lab = |e: Engine| crate::analytics::label(scores.get(e).polarity, self.epsilon);
            comments.push(CommentRow {
                id: doc.comment_id.clone(),
                tokens: doc.tokens.clone(),
                labels: EngineLabels {
                    valence_rule: lab(Engine::ValenceRule),
                    pattern_avg: lab(Engine::PatternAvg),
                    synset: lab(Engine::Synset),
                },
                scores,
            });
        }

        let mut distributions = BTreeMap::new();
        let mut rankings = Vec::new();
        for e in Engine::ALL {
            let l = labeled.get(&e).map(Vec::as_slice).unwrap_or(&[]);
            distributions.insert(e, distribution(l, e)?);
            for side in Side::ALL {
                rankings.push(top_words(&documents, l, &self.lexicons, e, side, self.top_n)?);
            }
        }
        let subjectivities: Vec<_> = comments.iter().map(|c| c.scores.pattern_avg.clone()).collect();
        let histogram = subjectivity_histogram(&subjectivities, DEFAULT_BINS)?;

        Ok(AnalysisReport {
            meta: RunMeta {
                config_digest: config_digest.to_string(),
                mode: self.engines.mode,
                disambiguation: self.engines.disambiguation,
                epsilon: self.epsilon,
                top_n: self.top_n,
                corpus_size: documents.len(),
                kept: comments.len(),
                dropped: dropped.len(),
                skipped_records,
            },
            distributions,
            histogram,
            rankings,
            comments,
            dropped,
        })
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Error> {
    fs::read(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

/// Digest of the settings and input contents. File paths are not part of
/// it, so moving the inputs does not change the digest.
pub fn config_digest(config: &RunConfig) -> Result<String, Error> {
    let mut lines: Vec<String> = vec![
        format!("format={}", config.format),
        format!("mode={}", config.mode),
        format!("disambiguation={}", config.disambiguation),
        format!("epsilon={}", config.epsilon),
        format!("top_n={}", config.top_n),
        format!("min_tokens={}", config.min_token_count),
        format!("stem={}", config.stemming),
        format!("lemmatize={}", config.lemmatization),
        format!("lenient={}", config.parse_mode == crate::corpus::ParseMode::Lenient),
        format!("valence={}", serde_json::to_string(&config.valence).expect("config serializes")),
        format!("input={}", sha256_hex(&read_bytes(&config.input)?)),
    ];
    let lexicon_files = [
        (VALENCE_FILE, LexiconKind::Valence),
        (PATTERN_FILE, LexiconKind::Pattern),
        (SYNSET_FILE, LexiconKind::Synset),
    ];
    for (name, kind) in lexicon_files {
        let h = match &config.lexicon_dir {
            Some(dir) => sha256_hex(&read_bytes(&dir.join(name))?),
            None => sha256_hex(Lexicon::bundled_source(kind).as_bytes()),
        };
        lines.push(format!("{name}={h}"));
    }
    let tags = match &config.lexicon_dir {
        Some(dir) if dir.join(POS_TAG_FILE).is_file() => sha256_hex(&read_bytes(&dir.join(POS_TAG_FILE))?),
        _ => "bundled".to_string(),
    };
    lines.push(format!("{POS_TAG_FILE}={tags}"));
    for (name, path) in [("stopwords", &config.stopwords), ("lemmas", &config.lemmas)] {
        let h = match path {
            Some(p) => sha256_hex(&read_bytes(p)?),
            None => "bundled".to_string(),
        };
        lines.push(format!("{name}={h}"));
    }
    Ok(sha256_hex(lines.join("\n").as_bytes()))
}

/// Rendered output files, keyed by path relative to the output directory.
pub type Outputs = BTreeMap<PathBuf, Vec<u8>>;

fn csv_bytes(rows: Vec<Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory csv write");
    }
    w.into_inner().expect("in-memory csv flush")
}

pub fn comments_csv(report: &AnalysisReport) -> Vec<u8> {
    let mut rows = vec![[
        "id",
        "valence_rule_polarity",
        "valence_rule_label",
        "pattern_avg_polarity",
        "pattern_avg_subjectivity",
        "pattern_avg_label",
        "synset_polarity",
        "synset_label",
        "tokens",
    ]
    .map(String::from)
    .to_vec()];
    for c in &report.comments {
        rows.push(vec![
            c.id.clone(),
            c.scores.valence_rule.polarity.to_string(),
            c.labels.valence_rule.to_string(),
            c.scores.pattern_avg.polarity.to_string(),
            c.scores.pattern_avg.subjectivity.unwrap_or(0.0).to_string(),
            c.labels.pattern_avg.to_string(),
            c.scores.synset.polarity.to_string(),
            c.labels.synset.to_string(),
            c.tokens.join(" "),
        ]);
    }
    csv_bytes(rows)
}

pub fn ranking_csv(ranking: &WordRanking) -> Vec<u8> {
    let mut rows = vec![vec!["rank".to_string(), "word".to_string(), "count".to_string()]];
    for (i, (w, c)) in ranking.entries.iter().enumerate() {
        rows.push(vec![(i + 1).to_string(), w.clone(), c.to_string()]);
    }
    csv_bytes(rows)
}

pub fn ranking_file_name(engine: Engine, side: Side) -> String {
    format!("ranking_{engine}_{side}.csv")
}

/// The 13 plots for a report, keyed by file name.
pub fn render_plots(report: &AnalysisReport) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (engine, d) in &report.distributions {
        out.insert(format!("distribution_bar_{engine}.svg"), plot::distribution_bar(d));
        out.insert(format!("distribution_pie_{engine}.svg"), plot::distribution_pie(d));
    }
    out.insert("subjectivity_histogram.svg".to_string(), plot::histogram_bar(&report.histogram));
    for r in &report.rankings {
        out.insert(format!("top_words_{}_{}.svg", r.engine, r.side), plot::ranking_bar(r));
    }
    out
}

fn write_all(out_dir: &Path, outputs: &Outputs) -> Result<Vec<PathBuf>, Error> {
    let mut written = Vec::with_capacity(outputs.len());
    for (rel, bytes) in outputs {
        let path = out_dir.join(rel);
        let parent = path.parent().unwrap_or(out_dir);
        fs::create_dir_all(parent).map_err(|source| Error::OutputNotWritable {
            path: parent.to_path_buf(),
            source,
        })?;
        fs::write(&path, bytes).map_err(|source| Error::OutputNotWritable {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the SVG plots of `report` into `out_dir`.
pub fn emit_plots(report: &AnalysisReport, out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>, Error> {
    let outputs: Outputs = render_plots(report)
        .into_iter()
        .map(|(name, svg)| (PathBuf::from(name), svg.into_bytes()))
        .collect();
    write_all(out_dir.as_ref(), &outputs)
}

fn skip_report_bytes(skipped: &[SkippedRecord]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_skip_report(skipped, &mut buf).expect("in-memory write");
    buf
}

/// Loads and analyzes the corpus named by `config` without writing anything.
pub fn analyze(config: &RunConfig) -> Result<(AnalysisReport, Vec<SkippedRecord>), Error> {
    config.validate()?;
    let pipeline = Pipeline::from_config(config)?;
    let outcome = load_corpus_with(&config.input, config.format, config.parse_mode)?;
    let digest = config_digest(config)?;
    let report = pipeline.analyze(&outcome.collection, &digest, outcome.skipped.len())?;
    Ok((report, outcome.skipped))
}

/// Runs the full pipeline and writes `report.json`, `comments.csv`, the six
/// ranking CSVs and, if enabled, the plots. Nothing is written unless every
/// input validated and the analysis succeeded.
pub fn run_analyze(config: &RunConfig) -> Result<AnalysisReport, Error> {
    let out_dir = config
        .out_dir
        .clone()
        .ok_or_else(|| Error::Config("no output directory given".into()))?;
    let (report, skipped) = analyze(config)?;
    let mut outputs = Outputs::new();
    outputs.insert(REPORT_FILE.into(), report.to_json().into_bytes());
    outputs.insert(COMMENTS_FILE.into(), comments_csv(&report));
    for r in &report.rankings {
        outputs.insert(ranking_file_name(r.engine, r.side).into(), ranking_csv(r));
    }
    if config.parse_mode == crate::corpus::ParseMode::Lenient {
        outputs.insert(SKIPPED_FILE.into(), skip_report_bytes(&skipped));
    }
    if config.plots {
        for (name, svg) in render_plots(&report) {
            outputs.insert(Path::new(PLOT_DIR).join(name), svg.into_bytes());
        }
    }
    write_all(&out_dir, &outputs)?;
    Ok(report)
}

/// Cleans the corpus and writes one JSON line per comment, dropped ones
/// included, to `cleaned.jsonl` in the output directory.
pub fn run_preprocess_only(config: &RunConfig) -> Result<Vec<CleanedDocument>, Error> {
    let out_dir = config
        .out_dir
        .clone()
        .ok_or_else(|| Error::Config("no output directory given".into()))?;
    config.validate()?;
    let pipeline = Pipeline::from_config(config)?;
    let outcome = load_corpus_with(&config.input, config.format, config.parse_mode)?;
    let docs = preprocess_corpus(&outcome.collection, &pipeline.preprocess);
    let mut buf = Vec::new();
    for d in &docs {
        buf.extend(serde_json::to_vec(d).expect("document serializes"));
        buf.push(b'\n');
    }
    let mut outputs = Outputs::new();
    outputs.insert(CLEANED_FILE.into(), buf);
    if config.parse_mode == crate::corpus::ParseMode::Lenient {
        outputs.insert(SKIPPED_FILE.into(), skip_report_bytes(&outcome.skipped));
    }
    write_all(&out_dir, &outputs)?;
    Ok(docs)
}

/// Reads a `report.json` written by [`run_analyze`].
pub fn load_report(path: impl AsRef<Path>) -> Result<AnalysisReport, Error> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::BadReport {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::BadReport {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}
