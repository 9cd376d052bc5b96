//! Averaged structured perceptron over BIO tags with greedy left-to-right
//! decoding.

mod features;
mod model_file;
mod train;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{bio_to_spans, AnnotatedDocument, Document, Tag, Token, NUM_TAGS};

pub use features::{
    extract_features, prev_tag_feature, token_features, word_shape, TEMPLATE_VERSION,
};
pub use model_file::{ModelError, MODEL_FORMAT_VERSION};
pub use train::{epoch_order, train, TrainConfig, TrainError};

/// Per-label weights of one feature, indexed like [`Tag::ALL`].
pub type LabelWeights = [f64; NUM_TAGS];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub doc_count: usize,
    pub epochs: usize,
    pub seed: u64,
}

/// A trained tagger. Labels are always [`Tag::ALL`] in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    weights: HashMap<String, LabelWeights>,
    template_version: String,
    train_meta: TrainMeta,
}

impl Default for Model {
    fn default() -> Self {
        Self::empty()
    }
}

impl Model {
    /// The zero model: every score is 0 and decoding yields all `O`.
    pub fn empty() -> Self {
        Self {
            weights: HashMap::new(),
            template_version: TEMPLATE_VERSION.to_string(),
            train_meta: TrainMeta::default(),
        }
    }

    /// Build a model from explicit `(feature, label) → weight` entries.
    /// Later duplicates overwrite earlier ones; zero weights are dropped.
    pub fn from_weights<I, S>(entries: I, train_meta: TrainMeta) -> Self
    where
        I: IntoIterator<Item = ((S, Tag), f64)>,
        S: Into<String>,
    {
        let mut weights: HashMap<String, LabelWeights> = HashMap::new();
        for ((feature, tag), w) in entries {
            weights.entry(feature.into()).or_insert([0.0; NUM_TAGS])[tag.index()] = w;
        }
        weights.retain(|_, row| row.iter().any(|&w| w != 0.0));
        Self {
            weights,
            template_version: TEMPLATE_VERSION.to_string(),
            train_meta,
        }
    }

    pub fn labels(&self) -> &'static [Tag; NUM_TAGS] {
        &Tag::ALL
    }

    pub fn template_version(&self) -> &str {
        &self.template_version
    }

    pub fn train_meta(&self) -> TrainMeta {
        self.train_meta
    }

    pub fn weight(&self, feature: &str, tag: Tag) -> f64 {
        self.weights
            .get(feature)
            .map_or(0.0, |row| row[tag.index()])
    }

    /// Non-zero entries sorted by `(feature, label name)`.
    pub fn entries(&self) -> Vec<(&str, Tag, f64)> {
        let mut out: Vec<(&str, Tag, f64)> = self
            .weights
            .iter()
            .flat_map(|(f, row)| {
                Tag::ALL
                    .iter()
                    .zip(row)
                    .filter(|(_, &w)| w != 0.0)
                    .map(move |(&t, &w)| (f.as_str(), t, w))
            })
            .collect();
        out.sort_by(|a, b| (a.0, a.1.to_string()).cmp(&(b.0, b.1.to_string())));
        out
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum of the weights of `features` for `label`; missing entries add 0.
    pub fn score<S: AsRef<str>>(&self, features: &[S], label: Tag) -> f64 {
        features
            .iter()
            .map(|f| self.weight(f.as_ref(), label))
            .fold(0.0, |acc, w| acc + w)
    }

    fn add_scores<S: AsRef<str>>(&self, features: &[S], acc: &mut LabelWeights) {
        for f in features {
            if let Some(row) = self.weights.get(f.as_ref()) {
                for (a, w) in acc.iter_mut().zip(row) {
                    *a += w;
                }
            }
        }
    }

    /// Greedy left-to-right decode of one sentence.
    pub fn decode_greedy(&self, tokens: &[Token]) -> Vec<Tag> {
        let static_scores: Vec<LabelWeights> = (0..tokens.len())
            .map(|i| {
                let mut acc = [0.0; NUM_TAGS];
                self.add_scores(&token_features(tokens, i), &mut acc);
                acc
            })
            .collect();
        greedy(&static_scores, |prev, acc| {
            self.add_scores(&[prev_tag_feature(prev)], acc)
        })
    }

    /// Tag every sentence of `doc`. The text and tokens are unchanged.
    pub fn tag_document(&self, doc: &Document) -> AnnotatedDocument {
        let spans = doc
            .sentences
            .iter()
            .flat_map(|s| {
                let tags = self.decode_greedy(doc.sentence_tokens(s));
                bio_to_spans(doc, s, &tags)
            })
            .collect();
        AnnotatedDocument::from_aligned(doc.clone(), spans)
    }
}

/// Shared greedy decoder.
///
/// `static_scores[i]` holds the label scores of every feature at position
/// `i` except `prev_tag`; `add_prev` adds the `prev_tag` contribution. At
/// each step the best label legal after the previous one wins, ties going to
/// the earliest label in canonical order.
pub(crate) fn greedy(
    static_scores: &[LabelWeights],
    mut add_prev: impl FnMut(Option<Tag>, &mut LabelWeights),
) -> Vec<Tag> {
    let mut out = Vec::with_capacity(static_scores.len());
    let mut prev = None;
    for row in static_scores {
        let mut scores = *row;
        add_prev(prev, &mut scores);
        let mut best: Option<(Tag, f64)> = None;
        for (&tag, &s) in Tag::ALL.iter().zip(&scores) {
            if !tag.may_follow(prev) {
                continue;
            }
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((tag, s));
            }
        }
        let tag = best.expect("O is always legal").0;
        out.push(tag);
        prev = Some(tag);
    }
    out
}
