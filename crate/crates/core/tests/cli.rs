mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use common::golden_dir;

fn opinion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opinion")).args(args).output().expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn golden_input() -> PathBuf {
    golden_dir().join("corpus.jsonl")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn assert_error(o: &Output, code: &str) {
    assert_eq!(o.status.code(), Some(1), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("ERROR {code}: ")), "{err}");
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn analyze_writes_all_outputs() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    let o = opinion(&["analyze", "--input", s(&golden_input()), "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["report.json", "comments.csv", "ranking_valence_rule_positive.csv", "ranking_synset_negative.csv"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    assert!(!out.join("plots").exists());
    assert!(!out.join("skipped.jsonl").exists());
    let r = report(&out);
    assert_eq!(r["meta"]["corpus_size"], 50);
    assert_eq!(r["meta"]["kept"], 47);
    assert_eq!(r["meta"]["dropped"], 3);
    let csv = fs::read_to_string(out.join("comments.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 47);
}

#[test]
fn missing_lexicon_dir_writes_nothing() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    let o = opinion(&[
        "analyze",
        "--input",
        s(&golden_input()),
        "--lexicons",
        s(&tmp.path().join("nope")),
        "--out",
        s(&out),
    ]);
    assert_error(&o, "INVALID_CONFIG");
    assert!(!out.exists());
}

#[test]
fn malformed_lexicon_is_reported() {
    let tmp = TempDir::new().unwrap();
    let lex = tmp.path().join("lex");
    fs::create_dir(&lex).unwrap();
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for f in ["pattern.tsv", "synsets.tsv"] {
        fs::copy(bundled.join(f), lex.join(f)).unwrap();
    }
    write(&lex, "valence.tsv", "good\t9.5\n");
    let out = tmp.path().join("out");
    let o = opinion(&["analyze", "--input", s(&golden_input()), "--lexicons", s(&lex), "--out", s(&out)]);
    assert_error(&o, "OUT_OF_RANGE_SCORE");
    assert!(!out.exists());
}

#[test]
fn corpus_errors_have_codes() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    let o = opinion(&["analyze", "--input", s(&tmp.path().join("absent.jsonl")), "--out", s(&out)]);
    assert_error(&o, "INVALID_CONFIG");

    let dup = write(tmp.path(), "dup.jsonl", "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
    assert_error(&opinion(&["analyze", "--input", s(&dup), "--out", s(&out)]), "DUPLICATE_ID");

    let bad = write(tmp.path(), "bad.jsonl", "{\"id\":\"a\",\"text\":\"x\"}\nnot json\n");
    assert_error(&opinion(&["analyze", "--input", s(&bad), "--out", s(&out)]), "MALFORMED_RECORD");
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_two() {
    let o = opinion(&["analyze", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ERROR USAGE: "));
    let o = opinion(&["top-words", "--input", "x.jsonl", "--engine", "nope", "--side", "positive"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_corpus_gives_zero_counts() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "empty.jsonl", "");
    let out = tmp.path().join("out");
    let o = opinion(&["analyze", "--input", s(&input), "--out", s(&out), "--plots"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["meta"]["corpus_size"], 0);
    for engine in ["valence_rule", "pattern_avg", "synset"] {
        let c = &r["distributions"][engine]["counts"];
        assert_eq!((c["positive"].as_u64(), c["neutral"].as_u64(), c["negative"].as_u64()), (Some(0), Some(0), Some(0)));
    }
    assert_eq!(fs::read_dir(out.join("plots")).unwrap().count(), 13);
}

#[test]
fn preprocess_handles_all_null_corpus() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "nulls.jsonl", "{\"id\":\"a\",\"text\":null}\n{\"id\":\"b\",\"text\":null}\n");
    let out = tmp.path().join("out");
    let o = opinion(&["preprocess", "--input", s(&input), "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<Value> = fs::read_to_string(out.join("cleaned.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l["dropped"] == "null"));
}

#[test]
fn preprocess_is_stable_across_runs() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for out in [&a, &b] {
        let o = opinion(&["preprocess", "--input", s(&golden_input()), "--out", s(out)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let first = fs::read(a.join("cleaned.jsonl")).unwrap();
    assert_eq!(first, fs::read(b.join("cleaned.jsonl")).unwrap());
    assert_eq!(String::from_utf8(first).unwrap().lines().count(), 50);
}

#[test]
fn plot_rerenders_identical_svgs() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    let o = opinion(&["analyze", "--input", s(&golden_input()), "--out", s(&out), "--plots"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let again = tmp.path().join("again");
    let o = opinion(&["plot", "--report", s(&out.join("report.json")), "--out", s(&again)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut names: Vec<_> = fs::read_dir(out.join("plots")).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 13);
    for n in names {
        let first = fs::read(out.join("plots").join(&n)).unwrap();
        let second = fs::read(again.join(&n)).unwrap();
        assert_eq!(first, second, "{n:?}");
    }
}

#[test]
fn plot_rejects_bad_report() {
    let tmp = TempDir::new().unwrap();
    let bad = write(tmp.path(), "report.json", "{}");
    let o = opinion(&["plot", "--report", s(&bad), "--out", s(&tmp.path().join("p"))]);
    assert_error(&o, "BAD_REPORT");
}

#[test]
fn flags_override_config_file() {
    let tmp = TempDir::new().unwrap();
    fs::copy(golden_input(), tmp.path().join("corpus.jsonl")).unwrap();
    let cfg = write(tmp.path(), "run.conf", "# test run\ninput = corpus.jsonl\nepsilon = 0.5\ntop_n = 3\n");

    let from_file = tmp.path().join("file");
    let o = opinion(&["analyze", "--config", s(&cfg), "--out", s(&from_file)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&from_file);
    assert_eq!(r["meta"]["epsilon"], 0.5);
    assert_eq!(r["meta"]["top_n"], 3);

    let overridden = tmp.path().join("flags");
    let o = opinion(&["analyze", "--config", s(&cfg), "--epsilon", "0.1", "--out", s(&overridden)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r2 = report(&overridden);
    assert_eq!(r2["meta"]["epsilon"], 0.1);
    assert_eq!(r2["meta"]["top_n"], 3);
    assert_ne!(r["meta"]["config_digest"], r2["meta"]["config_digest"]);

    let unknown = write(tmp.path(), "bad.conf", "input = corpus.jsonl\ncolour = blue\n");
    assert_error(&opinion(&["analyze", "--config", s(&unknown), "--out", s(&overridden)]), "INVALID_CONFIG");
}

#[test]
fn lenient_mode_reports_skips() {
    let tmp = TempDir::new().unwrap();
    let input = write(
        tmp.path(),
        "mixed.jsonl",
        "{\"id\":\"a\",\"text\":\"wind farms are great for the coast\"}\n{\"id\":\"b\"}\nnot json\n{\"id\":\"c\",\"text\":\"\"}\n",
    );
    let out = tmp.path().join("out");
    let o = opinion(&["analyze", "--input", s(&input), "--out", s(&out), "--lenient"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let skipped: Vec<Value> = fs::read_to_string(out.join("skipped.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let lines: Vec<u64> = skipped.iter().map(|v| v["line"].as_u64().unwrap()).collect();
    assert_eq!(lines, [2, 3, 4]);
    let r = report(&out);
    assert_eq!(r["meta"]["skipped_records"], 3);
    assert_eq!(r["meta"]["corpus_size"], 1);
}

#[test]
fn top_words_prints_csv() {
    let o = opinion(&["top-words", "--input", s(&golden_input()), "--engine", "valence_rule", "--side", "negative"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rank,word,count"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(!rows.is_empty());
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], (i + 1).to_string());
        assert!(r[2].parse::<u64>().unwrap() > 0);
    }
}

#[test]
fn csv_input_matches_jsonl_input() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(opinion(&["analyze", "--input", s(&golden_input()), "--out", s(&a)]).status.success());
    let csv = golden_dir().join("corpus.csv");
    assert!(opinion(&["analyze", "--input", s(&csv), "--out", s(&b)]).status.success());
    let (ra, rb) = (report(&a), report(&b));
    assert_eq!(ra["comments"], rb["comments"]);
    assert_eq!(ra["distributions"], rb["distributions"]);
}
