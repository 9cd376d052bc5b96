//! `deid`: generate, train, tag, evaluate, benchmark and redact.
//!
//! Exit status: 0 success, 1 input or format error, 2 usage error,
//! 3 internal invariant violation.

use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use deid_core::corpus::{
    load_corpus_dir, normalize_newlines, parse_annotated, serialize_annotated,
};
use deid_core::eval::{
    compute_metrics, evaluate_model, evaluate_pairs, render_eval_table, render_table, run_benchmark,
};
use deid_core::json::to_string_17;
use deid_core::redact::redact;
use deid_core::synth::{generate_corpus, write_synth_corpus, DISTINCT_LAYOUTS};
use deid_core::tagger::train;
use deid_core::{
    AnnotatedDocument, BenchmarkConfig, Document, Metric, Model, RedactionMode, SplitRatio,
    SynthConfig, TrainConfig,
};

const INPUT: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "deid",
    version,
    about = "PII detection and de-identification for medical reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic annotated corpus and its manifest.
    Synth {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        docs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Number of report layouts to draw from.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        variants: u64,
        /// Draw from every distinct layout.
        #[arg(long, conflicts_with = "variants")]
        varied: bool,
    },
    /// Train a model from an annotated corpus directory.
    Train {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        epochs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print the corpus parse statistics as JSON.
        #[arg(long)]
        stats: bool,
    },
    /// Tag a plain-text report and write it in the annotation format.
    Tag {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a model against a gold corpus.
    Eval {
        #[arg(long, required_unless_present = "identity")]
        model: Option<PathBuf>,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Score the gold spans against themselves.
        #[arg(long, hide = true)]
        identity: bool,
    },
    /// Run the split/trial benchmark and print precision, recall and f-measure tables.
    Benchmark {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "70:30,66:34,50:50")]
        splits: Vec<SplitRatio>,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        epochs: u64,
        /// JSON report path; printed after the tables when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tag a plain-text report and remove, mask or pseudonymize its PII.
    Redact {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        mode: RedactionMode,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pseudonym map output (pseudonym mode only).
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

struct Failure {
    status: u8,
    error: anyhow::Error,
}

trait Status<T> {
    fn status(self, status: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Status<T> for Result<T, E> {
    fn status(self, status: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            status,
            error: e.into(),
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let outcome = configure_threads().and_then(|()| {
        panic::catch_unwind(|| run(cli)).unwrap_or_else(|_| {
            Err(Failure {
                status: INTERNAL,
                error: anyhow!("internal error"),
            })
        })
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.status)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("DEID_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("DEID_THREADS must be a positive integer, got {value:?}"))
        .status(USAGE)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .status(INTERNAL)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Synth {
            docs,
            seed,
            out,
            variants,
            varied,
        } => {
            let variants = if varied {
                DISTINCT_LAYOUTS
            } else {
                variants as usize
            };
            cmd_synth(docs as usize, seed, &out, variants)
        }
        Command::Train {
            corpus,
            out,
            epochs,
            seed,
            stats,
        } => cmd_train(&corpus, &out, epochs as usize, seed, stats),
        Command::Tag { model, input, out } => cmd_tag(&model, &input, &out),
        Command::Eval {
            model,
            corpus,
            format,
            identity,
        } => cmd_eval(model.as_deref(), &corpus, format, identity),
        Command::Benchmark {
            corpus,
            splits,
            trials,
            seed,
            epochs,
            out,
        } => cmd_benchmark(
            &corpus,
            splits,
            trials as usize,
            seed,
            epochs as usize,
            out.as_deref(),
        ),
        Command::Redact {
            model,
            mode,
            input,
            out,
            seed,
            map,
        } => cmd_redact(&model, mode, &input, &out, seed, map.as_deref()),
    }
}

fn cmd_synth(docs: usize, seed: u64, out: &Path, variants: usize) -> Result<(), Failure> {
    let config = SynthConfig {
        doc_count: docs,
        seed,
        structural_variants: variants,
    };
    let corpus = generate_corpus(&config).status(USAGE)?;
    let manifest = write_synth_corpus(&config, &corpus, out)
        .with_context(|| format!("writing {}", out.display()))
        .status(INPUT)?;
    println!(
        "wrote {} documents ({} spans) to {}",
        manifest.doc_count,
        manifest.span_total,
        out.display()
    );
    for (category, n) in &manifest.spans_per_category {
        println!("  {:<8} {n}", category.as_str());
    }
    Ok(())
}

fn cmd_train(
    corpus: &Path,
    out: &Path,
    epochs: usize,
    seed: u64,
    show_stats: bool,
) -> Result<(), Failure> {
    let (corpus, stats) = load_corpus_dir(corpus).status(INPUT)?;
    if stats.crlf_normalized_documents > 0 {
        println!(
            "normalized CRLF line endings in {} documents",
            stats.crlf_normalized_documents
        );
    }
    println!(
        "documents: {}  tokens: {}  spans: {}",
        stats.documents, stats.tokens, stats.spans
    );
    if show_stats {
        println!("{}", serde_json::to_string_pretty(&stats).status(INTERNAL)?);
    }
    let config = TrainConfig {
        epochs,
        seed,
        shuffle: true,
    };
    let started = Instant::now();
    let model = train(&corpus, &config).status(INPUT)?;
    let elapsed = started.elapsed();
    model
        .save(out)
        .with_context(|| format!("writing {}", out.display()))
        .status(INPUT)?;
    println!("trained {epochs} epochs in {:.3} s", elapsed.as_secs_f64());
    println!("{}", model.checksum());
    Ok(())
}

fn load_model(path: &Path) -> Result<Model, Failure> {
    Model::load(path)
        .with_context(|| format!("loading model {}", path.display()))
        .status(INPUT)
}

/// Read a plain-text report with LF line endings.
fn read_plain(path: &Path) -> Result<String, Failure> {
    let raw = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .status(INPUT)?;
    let (text, normalized) = normalize_newlines(&raw);
    if normalized {
        println!("normalized CRLF line endings in {}", path.display());
    }
    if text.contains("<START:") || text.contains("<END>") {
        return Err(anyhow!(
            "{} already contains annotation markers",
            path.display()
        ))
        .status(INPUT);
    }
    Ok(text)
}

fn doc_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn write_output(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .with_context(|| format!("writing {}", path.display()))
        .status(INPUT)
}

fn cmd_tag(model: &Path, input: &Path, out: &Path) -> Result<(), Failure> {
    let model = load_model(model)?;
    let text = read_plain(input)?;
    let id = doc_id(input);
    let started = Instant::now();
    let tagged = model.tag_document(&Document::new(id.as_str(), text));
    let elapsed = started.elapsed();
    let annotated = serialize_annotated(&tagged);
    let reparsed = parse_annotated(&id, &annotated).status(INTERNAL)?;
    if reparsed != tagged {
        return Err(anyhow!("tagged output does not round-trip")).status(INTERNAL);
    }
    write_output(out, &annotated)?;
    println!(
        "tagged {}: {} spans in {:.1} ms",
        input.display(),
        tagged.spans.len(),
        elapsed.as_secs_f64() * 1e3
    );
    Ok(())
}

fn cmd_eval(
    model: Option<&Path>,
    corpus: &Path,
    format: Format,
    identity: bool,
) -> Result<(), Failure> {
    let (corpus, _) = load_corpus_dir(corpus).status(INPUT)?;
    let counts = if identity {
        evaluate_pairs(corpus.docs().iter().map(|d| (d, d))).status(INTERNAL)?
    } else {
        let model = load_model(model.expect("clap requires --model without --identity"))?;
        evaluate_model(&model, corpus.docs())
    };
    let report = compute_metrics(&counts);
    match format {
        Format::Table => print!("{}", render_eval_table(&report)),
        Format::Json => println!("{}", to_string_17(&report).status(INTERNAL)?),
    }
    Ok(())
}

fn cmd_benchmark(
    corpus: &Path,
    ratios: Vec<SplitRatio>,
    trials: usize,
    seed: u64,
    epochs: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let (corpus, _) = load_corpus_dir(corpus).status(INPUT)?;
    let config = BenchmarkConfig {
        ratios,
        trials,
        seed,
        epochs,
    };
    let started = Instant::now();
    let report = run_benchmark(&corpus, &config).status(INPUT)?;
    let json = report.to_json();
    if let Some(path) = out {
        write_output(path, &(json.clone() + "\n"))?;
    }
    let metrics = [Metric::Precision, Metric::Recall, Metric::FMeasure];
    for (i, metric) in metrics.into_iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{}", render_table(&report, metric));
    }
    println!(
        "\n{} runs in {:.2} s",
        report.runs.len(),
        started.elapsed().as_secs_f64()
    );
    if out.is_none() {
        println!("{json}");
    }
    Ok(())
}

fn cmd_redact(
    model: &Path,
    mode: RedactionMode,
    input: &Path,
    out: &Path,
    seed: u64,
    map: Option<&Path>,
) -> Result<(), Failure> {
    if map.is_some() && mode != RedactionMode::Pseudonym {
        return Err(anyhow!("--map requires --mode pseudonym")).status(USAGE);
    }
    let model = load_model(model)?;
    let text = read_plain(input)?;
    let tagged: AnnotatedDocument = model.tag_document(&Document::new(doc_id(input), text));
    let redacted = redact(&tagged, mode, seed).status(INTERNAL)?;
    let map_json = match (map, &redacted.map) {
        (Some(_), Some(m)) => Some(serde_json::to_string_pretty(m).status(INTERNAL)? + "\n"),
        (Some(_), None) => return Err(anyhow!("pseudonym mode produced no map")).status(INTERNAL),
        _ => None,
    };
    write_output(out, &redacted.text)?;
    if let (Some(path), Some(json)) = (map, map_json) {
        write_output(path, &json)?;
    }
    println!("redacted {} spans ({mode})", redacted.sites.len());
    Ok(())
}
