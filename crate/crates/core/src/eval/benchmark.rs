//! Repeated random-split training and evaluation, averaged per ratio.

use std::fmt::Write as _;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::metrics::{compute_metrics, evaluate_model, EvalReport, Prf};
use super::split::{make_splits, SplitError, SplitRatio};
use crate::corpus::Corpus;
use crate::json::to_string_17;
use crate::rng::SplitMix64;
use crate::tagger::{train, TrainConfig, TrainError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkConfig {
    pub ratios: Vec<SplitRatio>,
    pub trials: usize,
    pub seed: u64,
    pub epochs: usize,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            ratios: SplitRatio::STANDARD.to_vec(),
            trials: 5,
            seed: 0,
            epochs: 10,
        }
    }
}

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("no split ratios configured")]
    NoRatios,
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("ratio {ratio}, trial {trial}: {source}")]
    Train {
        ratio: SplitRatio,
        trial: usize,
        #[source]
        source: TrainError,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub ratios: Vec<SplitRatio>,
    pub trials: usize,
    pub seed: u64,
    pub epochs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub ratio: SplitRatio,
    pub trial: usize,
    pub train_eval: EvalReport,
    pub test_eval: EvalReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriplePrf {
    pub p: f64,
    pub r: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioAverages {
    pub train: TriplePrf,
    pub test: TriplePrf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub config: ReportConfig,
    pub runs: Vec<RunReport>,
    /// Keyed by ratio (`70:30`), in configured order.
    pub averages: IndexMap<String, RatioAverages>,
}

impl BenchmarkReport {
    pub fn averages_for(&self, ratio: SplitRatio) -> Option<&RatioAverages> {
        self.averages.get(&ratio.to_string())
    }

    /// JSON with 17-significant-digit reals.
    pub fn to_json(&self) -> String {
        to_string_17(self).expect("report serializes")
    }
}

/// Per-ratio base seed, so each ratio draws its own shuffles.
fn ratio_seed(seed: u64, ratio: SplitRatio) -> u64 {
    let key = (ratio.train_pct as u64) << 32 | ratio.test_pct as u64;
    seed ^ SplitMix64::new(key).next_u64()
}

/// Train and evaluate once per `(ratio, trial)`.
///
/// Each run trains on its training documents (perceptron seed = the trial
/// seed) and is scored on both its training documents and its held-out
/// documents. Runs execute in parallel and are reported in `(ratio, trial)`
/// order.
pub fn run_benchmark(
    corpus: &Corpus,
    config: &BenchmarkConfig,
) -> Result<BenchmarkReport, BenchmarkError> {
    if config.ratios.is_empty() {
        return Err(BenchmarkError::NoRatios);
    }
    let ids = corpus.ids();
    let mut plans = Vec::new();
    for &ratio in &config.ratios {
        plans.extend(make_splits(
            &ids,
            ratio,
            config.trials,
            ratio_seed(config.seed, ratio),
        )?);
    }

    let runs = plans
        .par_iter()
        .map(|plan| {
            let train_set = corpus.subset(&plan.train_ids);
            let test_set = corpus.subset(&plan.test_ids);
            let train_config = TrainConfig {
                epochs: config.epochs,
                seed: plan.seed,
                shuffle: true,
            };
            let model =
                train(&train_set, &train_config).map_err(|source| BenchmarkError::Train {
                    ratio: plan.ratio,
                    trial: plan.trial_index,
                    source,
                })?;
            Ok(RunReport {
                ratio: plan.ratio,
                trial: plan.trial_index,
                train_eval: compute_metrics(&evaluate_model(&model, train_set.docs())),
                test_eval: compute_metrics(&evaluate_model(&model, test_set.docs())),
            })
        })
        .collect::<Result<Vec<_>, BenchmarkError>>()?;

    let mean = |runs: &[&RunReport], pick: fn(&RunReport) -> &Prf| {
        let n = runs.len() as f64;
        let sum = |g: fn(&Prf) -> f64| runs.iter().map(|r| g(pick(r))).sum::<f64>() / n;
        TriplePrf {
            p: sum(|m| m.precision),
            r: sum(|m| m.recall),
            f: sum(|m| m.f_measure),
        }
    };
    let averages = config
        .ratios
        .iter()
        .map(|&ratio| {
            let of_ratio: Vec<&RunReport> = runs.iter().filter(|r| r.ratio == ratio).collect();
            let avg = RatioAverages {
                train: mean(&of_ratio, |r| &r.train_eval.overall),
                test: mean(&of_ratio, |r| &r.test_eval.overall),
            };
            (ratio.to_string(), avg)
        })
        .collect();

    Ok(BenchmarkReport {
        config: ReportConfig {
            ratios: config.ratios.clone(),
            trials: config.trials,
            seed: config.seed,
            epochs: config.epochs,
        },
        runs,
        averages,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Precision,
    Recall,
    FMeasure,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Precision, Metric::Recall, Metric::FMeasure];

    pub fn title(self) -> &'static str {
        match self {
            Metric::Precision => "SUMMARIZED AVERAGE MODEL PRECISION",
            Metric::Recall => "SUMMARIZED AVERAGE MODEL RECALL",
            Metric::FMeasure => "SUMMARIZED AVERAGE MODEL F-MEASURE",
        }
    }

    fn pick(self, t: &TriplePrf) -> f64 {
        match self {
            Metric::Precision => t.p,
            Metric::Recall => t.r,
            Metric::FMeasure => t.f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub split: String,
    pub train: f64,
    pub test: f64,
}

pub fn table_rows(report: &BenchmarkReport, metric: Metric) -> Vec<TableRow> {
    report
        .config
        .ratios
        .iter()
        .filter_map(|ratio| {
            report.averages_for(*ratio).map(|avg| TableRow {
                split: ratio.label(),
                train: metric.pick(&avg.train),
                test: metric.pick(&avg.test),
            })
        })
        .collect()
}

/// One row per ratio with Train Data / Test Data columns, 4 decimals.
pub fn render_table(report: &BenchmarkReport, metric: Metric) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", metric.title());
    let _ = writeln!(
        out,
        "{:<12}{:>12}{:>12}",
        "Data Split", "Train Data", "Test Data"
    );
    for row in table_rows(report, metric) {
        let _ = writeln!(
            out,
            "{:<12}{:>12.4}{:>12.4}",
            row.split, row.train, row.test
        );
    }
    out
}

/// The same content as [`render_table`], as JSON.
pub fn render_table_json(report: &BenchmarkReport, metric: Metric) -> String {
    #[derive(Serialize)]
    struct Table {
        metric: Metric,
        rows: Vec<TableRow>,
    }
    to_string_17(&Table {
        metric,
        rows: table_rows(report, metric),
    })
    .expect("table serializes")
}
