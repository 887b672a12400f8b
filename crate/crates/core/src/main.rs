use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use opinion_mining::analytics::Side;
use opinion_mining::config::{ConfigValues, RunConfig};
use opinion_mining::corpus::CorpusFormat;
use opinion_mining::engines::{Disambiguation, Engine, PipelineMode};
use opinion_mining::report;
use opinion_mining::Error;

#[derive(Parser)]
#[command(name = "opinion", version, about = "Lexicon-based opinion mining over comment corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a corpus and write report.json, CSV extracts and (optionally) plots.
    Analyze {
        #[command(flatten)]
        run: RunArgs,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write SVG plots under <out>/plots.
        #[arg(long)]
        plots: bool,
    },
    /// Clean a corpus and write cleaned.jsonl (dropped comments included).
    Preprocess {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one top-word ranking as CSV.
    TopWords {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        engine: Engine,
        #[arg(long)]
        side: Side,
    },
    /// Re-render the plots of an existing report.json.
    Plot {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat key = value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    format: Option<CorpusFormat>,
    /// Directory with valence.tsv, pattern.tsv and synsets.tsv.
    #[arg(long)]
    lexicons: Option<PathBuf>,
    #[arg(long)]
    mode: Option<PipelineMode>,
    #[arg(long)]
    disambiguation: Option<Disambiguation>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    top_n: Option<usize>,
    #[arg(long)]
    min_tokens: Option<usize>,
    #[arg(long)]
    stem: bool,
    #[arg(long)]
    no_lemmatize: bool,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    lemmas: Option<PathBuf>,
    /// Skip malformed records instead of failing.
    #[arg(long)]
    lenient: bool,
}

impl RunArgs {
    fn into_config(self, out: Option<PathBuf>, plots: bool) -> Result<RunConfig, Error> {
        let flags = ConfigValues {
            input: self.input,
            format: self.format,
            lexicon_dir: self.lexicons,
            stopwords: self.stopwords,
            lemmas: self.lemmas,
            mode: self.mode,
            disambiguation: self.disambiguation,
            epsilon: self.epsilon,
            top_n: self.top_n,
            min_token_count: self.min_tokens,
            stemming: self.stem.then_some(true),
            lemmatization: self.no_lemmatize.then_some(false),
            lenient: self.lenient.then_some(true),
            out_dir: out,
            plots: plots.then_some(true),
            ..Default::default()
        };
        let file = match &self.config {
            Some(p) => ConfigValues::load(p)?,
            None => ConfigValues::default(),
        };
        flags.or(file).into_run_config()
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze { run, out, plots } => {
            let config = run.into_config(out, plots)?;
            report::run_analyze(&config)?;
        }
        Command::Preprocess { run, out } => {
            let config = run.into_config(out, false)?;
            report::run_preprocess_only(&config)?;
        }
        Command::TopWords { run, engine, side } => {
            let config = run.into_config(None, false)?;
            let (r, _) = report::analyze(&config)?;
            let ranking = r.ranking(engine, side).expect("report holds all six rankings");
            io::stdout()
                .write_all(&report::ranking_csv(ranking))
                .map_err(|source| Error::OutputNotWritable {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
        Command::Plot { report: path, out } => {
            let r = report::load_report(&path)?;
            report::emit_plots(&r, out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("ERROR USAGE: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace(['\n', '\r'], " ");
            eprintln!("ERROR {}: {msg}", e.code());
            ExitCode::FAILURE
        }
    }
}
