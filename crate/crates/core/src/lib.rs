//! PII detection and de-identification for unstructured medical reports.
//!
//! The crate is organised around the pipeline it implements:
//!
//! - [`corpus`]: documents, the inline `<START:category>…<END>` annotation
//!   format, tokenization, sentence segmentation and BIO tag encoding.
//! - [`tagger`]: feature templates, an averaged structured perceptron with
//!   greedy constrained decoding, and the on-disk model format.
//! - [`eval`]: exact-span matching, precision/recall/f-measure, randomized
//!   train/test splits and the multi-trial benchmark.
//! - [`redact`]: removal, placeholder substitution and pseudonymization of
//!   tagged spans.
//! - [`synth`]: a seeded generator of report-like documents with gold spans.

pub mod corpus;
pub mod eval;
pub mod json;
pub mod redact;
pub mod rng;
pub mod synth;
pub mod tagger;

pub use corpus::{
    AnnotatedDocument, Corpus, Document, ParseError, ParseStats, PiiCategory, Span, Tag, Token,
};
pub use eval::{
    BenchmarkConfig, BenchmarkReport, EvalCounts, EvalReport, Metric, SplitPlan, SplitRatio,
};
pub use redact::{PseudonymMap, Redacted, RedactionMode};
pub use synth::SynthConfig;
pub use tagger::{Model, TrainConfig};
