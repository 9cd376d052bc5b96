use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{AnnotatedDocument, Document, PiiCategory, Span};
use crate::tagger::Model;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Counts {
    fn add(&mut self, other: Counts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
    }
}

/// True/false positive and false negative counts, overall and per category.
/// All five categories are always present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCounts {
    pub overall: Counts,
    pub per_category: BTreeMap<PiiCategory, Counts>,
}

impl Default for EvalCounts {
    fn default() -> Self {
        Self {
            overall: Counts::default(),
            per_category: PiiCategory::ALL
                .iter()
                .map(|&c| (c, Counts::default()))
                .collect(),
        }
    }
}

impl EvalCounts {
    pub fn merge(&mut self, other: &EvalCounts) {
        self.overall.add(other.overall);
        for (cat, c) in &other.per_category {
            self.per_category.entry(*cat).or_default().add(*c);
        }
    }

    fn bump(&mut self, cat: PiiCategory, f: impl Fn(&mut Counts)) {
        f(&mut self.overall);
        f(self.per_category.entry(cat).or_default());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("span {start}..{end} exceeds document length {len}")]
pub struct DocumentMismatch {
    pub start: usize,
    pub end: usize,
    pub len: usize,
}

/// Exact-match comparison of two span sets over one document of `text_len`
/// bytes: a prediction is a true positive iff a gold span has the same
/// boundaries and category.
pub fn match_spans(
    gold: &[Span],
    predicted: &[Span],
    text_len: usize,
) -> Result<EvalCounts, DocumentMismatch> {
    if let Some(s) = gold
        .iter()
        .chain(predicted)
        .find(|s| s.char_end > text_len || s.char_start > s.char_end)
    {
        return Err(DocumentMismatch {
            start: s.char_start,
            end: s.char_end,
            len: text_len,
        });
    }
    let key = |s: &Span| (s.char_start, s.char_end, s.category);
    let gold_keys: HashSet<_> = gold.iter().map(key).collect();
    let pred_keys: HashSet<_> = predicted.iter().map(key).collect();

    let mut counts = EvalCounts::default();
    for p in predicted {
        if gold_keys.contains(&key(p)) {
            counts.bump(p.category, |c| c.tp += 1);
        } else {
            counts.bump(p.category, |c| c.fp += 1);
        }
    }
    for g in gold.iter().filter(|g| !pred_keys.contains(&key(g))) {
        counts.bump(g.category, |c| c.fn_ += 1);
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl Prf {
    /// Precision `tp/(tp+fp)`, recall `tp/(tp+fn)`, f-measure their harmonic
    /// mean. With nothing predicted and nothing to find all three are 1;
    /// otherwise an empty denominator gives 0.
    pub fn from_counts(c: Counts) -> Self {
        let predicted = c.tp + c.fp;
        let gold = c.tp + c.fn_;
        if predicted == 0 && gold == 0 {
            return Self {
                precision: 1.0,
                recall: 1.0,
                f_measure: 1.0,
            };
        }
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(c.tp, predicted);
        let recall = ratio(c.tp, gold);
        let f_measure = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            precision,
            recall,
            f_measure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub counts: EvalCounts,
    pub overall: Prf,
    pub per_category: BTreeMap<PiiCategory, Prf>,
}

/// Micro-averaged overall metrics plus one set per category.
pub fn compute_metrics(counts: &EvalCounts) -> EvalReport {
    EvalReport {
        counts: counts.clone(),
        overall: Prf::from_counts(counts.overall),
        per_category: counts
            .per_category
            .iter()
            .map(|(&cat, &c)| (cat, Prf::from_counts(c)))
            .collect(),
    }
}

/// Pooled counts over `(gold, predicted)` document pairs.
pub fn evaluate_pairs<'a>(
    pairs: impl IntoIterator<Item = (&'a AnnotatedDocument, &'a AnnotatedDocument)>,
) -> Result<EvalCounts, DocumentMismatch> {
    let mut total = EvalCounts::default();
    for (gold, pred) in pairs {
        total.merge(&match_spans(&gold.spans, &pred.spans, gold.text().len())?);
    }
    Ok(total)
}

/// Tag the raw text of every gold document with `model` and pool the
/// counts. Documents are tagged in parallel.
pub fn evaluate_model(model: &Model, gold: &[AnnotatedDocument]) -> EvalCounts {
    gold.par_iter()
        .map(|g| {
            let predicted = model.tag_document(&Document::new(g.id(), g.text()));
            match_spans(&g.spans, &predicted.spans, g.text().len())
                .expect("tagger spans lie inside the document")
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(EvalCounts::default(), |mut acc, c| {
            acc.merge(c);
            acc
        })
}

/// Fixed-width table of per-category and overall metrics, 4 decimals.
pub fn render_eval_table(report: &EvalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:>6} {:>6} {:>6} {:>9} {:>9} {:>9}",
        "Category", "TP", "FP", "FN", "Precision", "Recall", "F-Measure"
    );
    let rows = report
        .per_category
        .iter()
        .map(|(cat, prf)| (cat.as_str(), report.counts.per_category[cat], prf))
        .chain(std::iter::once((
            "overall",
            report.counts.overall,
            &report.overall,
        )));
    for (name, c, prf) in rows {
        let _ = writeln!(
            out,
            "{:<10} {:>6} {:>6} {:>6} {:>9.4} {:>9.4} {:>9.4}",
            name, c.tp, c.fp, c.fn_, prf.precision, prf.recall, prf.f_measure
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use PiiCategory::*;

    fn span(category: PiiCategory, char_start: usize, char_end: usize) -> Span {
        Span {
            category,
            char_start,
            char_end,
            token_start: 0,
            token_end: 1,
        }
    }

    #[test]
    fn identical_sets_match() {
        let c = match_spans(&[span(Date, 28, 36)], &[span(Date, 28, 36)], 40).unwrap();
        assert_eq!(
            c.overall,
            Counts {
                tp: 1,
                fp: 0,
                fn_: 0
            }
        );
        assert_eq!(c.per_category[&Date].tp, 1);
    }

    #[test]
    fn boundary_mismatch_is_double_error() {
        let c = match_spans(&[span(Name, 8, 24)], &[span(Name, 8, 22)], 40).unwrap();
        assert_eq!(
            c.overall,
            Counts {
                tp: 0,
                fp: 1,
                fn_: 1
            }
        );
    }

    #[test]
    fn category_mismatch_is_double_error() {
        let c = match_spans(&[span(Place, 0, 5)], &[span(Address, 0, 5)], 5).unwrap();
        assert_eq!(
            c.per_category[&Place],
            Counts {
                tp: 0,
                fp: 0,
                fn_: 1
            }
        );
        assert_eq!(
            c.per_category[&Address],
            Counts {
                tp: 0,
                fp: 1,
                fn_: 0
            }
        );
    }

    #[test]
    fn partial_recall() {
        let c = match_spans(
            &[span(Name, 8, 24), span(Date, 28, 36)],
            &[span(Date, 28, 36)],
            40,
        )
        .unwrap();
        assert_eq!(
            c.overall,
            Counts {
                tp: 1,
                fp: 0,
                fn_: 1
            }
        );
    }

    #[test]
    fn out_of_range_spans_are_rejected() {
        assert_eq!(
            match_spans(&[span(Name, 8, 24)], &[], 20),
            Err(DocumentMismatch {
                start: 8,
                end: 24,
                len: 20
            })
        );
    }

    #[test]
    fn metric_arithmetic() {
        let prf = Prf::from_counts(Counts {
            tp: 9,
            fp: 1,
            fn_: 2,
        });
        assert!((prf.precision - 0.9).abs() < 1e-12);
        assert!((prf.recall - 9.0 / 11.0).abs() < 1e-12);
        // 2 * 0.9 * (9/11) / (0.9 + 9/11) = 18/21
        assert!((prf.f_measure - 18.0 / 21.0).abs() < 1e-12);
        assert!((prf.f_measure - 0.85714).abs() < 1e-5);
    }

    #[test]
    fn zero_denominator_conventions() {
        let vacuous = Prf::from_counts(Counts::default());
        assert_eq!(
            (vacuous.precision, vacuous.recall, vacuous.f_measure),
            (1.0, 1.0, 1.0)
        );
        let missed = Prf::from_counts(Counts {
            tp: 0,
            fp: 0,
            fn_: 5,
        });
        assert_eq!(
            (missed.precision, missed.recall, missed.f_measure),
            (0.0, 0.0, 0.0)
        );
        let spurious = Prf::from_counts(Counts {
            tp: 0,
            fp: 3,
            fn_: 0,
        });
        assert_eq!(
            (spurious.precision, spurious.recall, spurious.f_measure),
            (0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn report_covers_every_category() {
        let counts = match_spans(&[span(Date, 0, 4)], &[span(Date, 0, 4)], 4).unwrap();
        let report = compute_metrics(&counts);
        assert_eq!(report.per_category.len(), 5);
        assert_eq!(report.per_category[&Name].f_measure, 1.0);
        assert_eq!(report.overall.f_measure, 1.0);
        let table = render_eval_table(&report);
        assert!(table.contains("overall"));
        assert!(table.contains("1.0000"));
    }
}
