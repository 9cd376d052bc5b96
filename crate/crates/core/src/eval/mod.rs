//! Exact-span evaluation and the split/trial benchmark protocol.

mod benchmark;
mod metrics;
mod split;

pub use benchmark::{
    render_table, render_table_json, run_benchmark, table_rows, BenchmarkConfig, BenchmarkError,
    BenchmarkReport, Metric, RatioAverages, ReportConfig, RunReport, TableRow, TriplePrf,
};
pub use metrics::{
    compute_metrics, evaluate_model, evaluate_pairs, match_spans, render_eval_table, Counts,
    DocumentMismatch, EvalCounts, EvalReport, Prf,
};
pub use split::{make_splits, SplitError, SplitPlan, SplitRatio};
