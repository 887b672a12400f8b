#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::{json, Map, Value};

use opinion_mining::analytics::{label, Side};
use opinion_mining::corpus::{load_corpus, CommentCollection, CorpusFormat};
use opinion_mining::engines::{
    score_pattern_avg, score_valence_rule, Disambiguation, Engine, EngineConfig, PipelineMode, Proportions, ScoreTriple,
};
use opinion_mining::engines::{score_all, score_synset, tag_pos};
use opinion_mining::preprocess::{preprocess_corpus, DropReason};
use opinion_mining::report::Pipeline;

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden_corpus() -> CommentCollection {
    load_corpus(golden_dir().join("corpus.jsonl"), CorpusFormat::Jsonl).expect("golden corpus loads")
}

pub fn golden_manifest() -> Value {
    let text = std::fs::read_to_string(golden_dir().join("manifest.json")).expect("manifest readable");
    serde_json::from_str(&text).expect("manifest parses")
}

fn props(p: &Proportions) -> Value {
    json!([p.positive, p.neutral, p.negative])
}

fn toks(words: &[&str]) -> Vec<String> {
    words.iter().map(|s| s.to_string()).collect()
}

/// Runs the library over `collection` and lays the results out in the
/// golden manifest's schema.
pub fn manifest_for(collection: &CommentCollection) -> Value {
    let pipeline = Pipeline::default();
    let lex = &pipeline.lexicons;
    let docs = preprocess_corpus(collection, &pipeline.preprocess);
    let native = EngineConfig {
        mode: PipelineMode::EngineNative,
        ..EngineConfig::default()
    };

    let mut comments = Vec::new();
    for d in &docs {
        let mut entry = Map::new();
        entry.insert("id".into(), json!(d.comment_id));
        entry.insert("tokens".into(), json!(d.tokens));
        entry.insert(
            "dropped".into(),
            match d.dropped {
                None => Value::Null,
                Some(DropReason::Null) => json!("null"),
                Some(DropReason::TooShort) => json!("too_short"),
            },
        );
        if d.is_kept() {
            let s: ScoreTriple = score_all(d, lex, &pipeline.engines).unwrap();
            let n = score_all(d, lex, &native).unwrap();
            let avg = score_synset(&tag_pos(&d.tokens, &lex.tagger), &lex.synset, Disambiguation::AverageSenses).unwrap();
            entry.insert(
                "scores".into(),
                json!({
                    "valence_rule": {"polarity": s.valence_rule.polarity, "proportions": props(s.valence_rule.proportions.as_ref().unwrap())},
                    "pattern_avg": {"polarity": s.pattern_avg.polarity, "subjectivity": s.pattern_avg.subjectivity.unwrap()},
                    "synset": {"polarity": s.synset.polarity},
                }),
            );
            entry.insert(
                "engine_native_valence".into(),
                json!({"polarity": n.valence_rule.polarity, "proportions": props(n.valence_rule.proportions.as_ref().unwrap())}),
            );
            entry.insert("synset_average_senses".into(), json!(avg.polarity));
            entry.insert(
                "labels".into(),
                json!({
                    "valence_rule": label(s.valence_rule.polarity, 0.0).as_str(),
                    "pattern_avg": label(s.pattern_avg.polarity, 0.0).as_str(),
                    "synset": label(s.synset.polarity, 0.0).as_str(),
                }),
            );
        }
        comments.push(Value::Object(entry));
    }

    let report = pipeline.analyze(collection, "", 0).unwrap();
    let mut distributions = Map::new();
    for (engine, d) in &report.distributions {
        distributions.insert(
            engine.to_string(),
            json!({
                "counts": {"positive": d.counts.positive, "neutral": d.counts.neutral, "negative": d.counts.negative},
                "proportions": {"positive": d.proportions.positive, "neutral": d.proportions.neutral, "negative": d.proportions.negative},
            }),
        );
    }
    let mut rankings = Map::new();
    for e in Engine::ALL {
        for side in Side::ALL {
            let r = report.ranking(e, side).unwrap();
            let entries: Vec<Value> = r.entries.iter().map(|(w, c)| json!([w, c])).collect();
            rankings.insert(format!("{e}_{side}"), Value::Array(entries));
        }
    }
    let h = &report.histogram;
    let vr = pipeline.engines.valence.clone();
    let good = score_valence_rule(None, &toks(&["good"]), &lex.valence, &vr).unwrap().polarity;
    let not_good = score_valence_rule(None, &toks(&["not", "good"]), &lex.valence, &vr).unwrap().polarity;
    let ga = score_pattern_avg(&toks(&["great", "awful"]), &lex.pattern).unwrap();

    json!({
        "corpus_size": report.meta.corpus_size,
        "kept": report.meta.kept,
        "dropped": report.meta.dropped,
        "comments": comments,
        "distributions": distributions,
        "histogram": {"bin_edges": h.bin_edges, "counts": h.counts, "mean": h.mean, "median": h.median},
        "rankings": rankings,
        "examples": {"good": good, "not_good": not_good, "great_awful": [ga.polarity, ga.subjectivity.unwrap()]},
    })
}

/// Key-sorted compact JSON; equal values give equal bytes.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("value serializes")
}
