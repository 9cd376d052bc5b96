//! Collins-style averaged perceptron training.
//!
//! Weights are updated once per mis-decoded sentence with
//! `Φ(sentence, gold) − Φ(sentence, predicted)` at learning rate 1. The
//! returned weights are the mean of the weight vector taken after every
//! sentence visit, accumulated lazily: each `(feature, label)` cell keeps a
//! running total and the visit at which its current value took effect.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{greedy, prev_tag_feature, token_features, LabelWeights, Model, TrainMeta};
use crate::corpus::{spans_to_bio, BioError, Corpus, Tag, NUM_TAGS};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub seed: u64,
    pub shuffle: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 10,
            seed: 0,
            shuffle: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrainError {
    #[error("cannot train on an empty corpus")]
    EmptyCorpus,
    #[error("epochs must be at least 1")]
    InvalidEpochs,
    #[error("document {0:?} has no sentences")]
    EmptyDocument(String),
    #[error("document {doc:?}: {source}")]
    Bio {
        doc: String,
        #[source]
        source: BioError,
    },
}

/// Visit order of `count` sentences in `epoch` (0-based).
///
/// With shuffling on, the identity order is shuffled by a [`SplitMix64`]
/// stream seeded with `seed ^ epoch`.
pub fn epoch_order(count: usize, epoch: usize, config: &TrainConfig) -> Vec<usize> {
    let mut order: Vec<usize> = (0..count).collect();
    if config.shuffle {
        SplitMix64::new(config.seed ^ epoch as u64).shuffle(&mut order);
    }
    order
}

struct Sentence {
    /// Interned non-`prev_tag` feature ids per token.
    features: Vec<Vec<usize>>,
    gold: Vec<Tag>,
}

#[derive(Default)]
struct Interner {
    ids: HashMap<String, usize>,
    names: Vec<String>,
}

impl Interner {
    fn intern(&mut self, name: String) -> usize {
        if let Some(&id) = self.ids.get(&name) {
            return id;
        }
        let id = self.names.len();
        self.ids.insert(name.clone(), id);
        self.names.push(name);
        id
    }
}

struct Averager {
    weights: Vec<LabelWeights>,
    totals: Vec<LabelWeights>,
    stamps: Vec<[u64; NUM_TAGS]>,
}

impl Averager {
    fn new(features: usize) -> Self {
        Self {
            weights: vec![[0.0; NUM_TAGS]; features],
            totals: vec![[0.0; NUM_TAGS]; features],
            stamps: vec![[0; NUM_TAGS]; features],
        }
    }

    /// Apply `delta` during visit `visit` (1-based).
    fn update(&mut self, feature: usize, label: usize, delta: f64, visit: u64) {
        let held = visit - self.stamps[feature][label];
        self.totals[feature][label] += held as f64 * self.weights[feature][label];
        self.stamps[feature][label] = visit;
        self.weights[feature][label] += delta;
    }

    /// Mean weights over `visits` snapshots.
    fn finish(mut self, visits: u64) -> Vec<LabelWeights> {
        for f in 0..self.weights.len() {
            for l in 0..NUM_TAGS {
                let held = visits + 1 - self.stamps[f][l];
                self.totals[f][l] += held as f64 * self.weights[f][l];
                self.totals[f][l] /= visits as f64;
            }
        }
        self.totals
    }
}

pub fn train(corpus: &Corpus, config: &TrainConfig) -> Result<Model, TrainError> {
    if corpus.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }
    if config.epochs == 0 {
        return Err(TrainError::InvalidEpochs);
    }

    let mut interner = Interner::default();
    // prev_tag ids: index 0 is the sentence start, then Tag::ALL order.
    let prev_ids: Vec<usize> = std::iter::once(None)
        .chain(Tag::ALL.iter().copied().map(Some))
        .map(|t| interner.intern(prev_tag_feature(t)))
        .collect();
    let prev_id = |t: Option<Tag>| prev_ids[t.map_or(0, |t| t.index() + 1)];

    let mut sentences = Vec::new();
    for ann in corpus.docs() {
        let doc = &ann.doc;
        if doc.sentences.is_empty() {
            return Err(TrainError::EmptyDocument(doc.id.clone()));
        }
        for range in &doc.sentences {
            let gold = spans_to_bio(doc, range, &ann.spans).map_err(|source| TrainError::Bio {
                doc: doc.id.clone(),
                source,
            })?;
            let tokens = doc.sentence_tokens(range);
            let features = (0..tokens.len())
                .map(|i| {
                    token_features(tokens, i)
                        .into_iter()
                        .map(|f| interner.intern(f))
                        .collect()
                })
                .collect();
            sentences.push(Sentence { features, gold });
        }
    }

    let mut avg = Averager::new(interner.names.len());
    let mut visit: u64 = 0;
    for epoch in 0..config.epochs {
        for idx in epoch_order(sentences.len(), epoch, config) {
            visit += 1;
            let sentence = &sentences[idx];
            let predicted = decode_interned(&avg.weights, sentence, &prev_id);
            if predicted == sentence.gold {
                continue;
            }
            let mut delta: BTreeMap<(usize, usize), f64> = BTreeMap::new();
            let mut add = |tags: &[Tag], sign: f64| {
                let mut prev = None;
                for (feats, &tag) in sentence.features.iter().zip(tags) {
                    for &f in feats.iter().chain(std::iter::once(&prev_id(prev))) {
                        *delta.entry((f, tag.index())).or_default() += sign;
                    }
                    prev = Some(tag);
                }
            };
            add(&sentence.gold, 1.0);
            add(&predicted, -1.0);
            for ((f, l), d) in delta {
                if d != 0.0 {
                    avg.update(f, l, d, visit);
                }
            }
        }
    }

    let averaged = avg.finish(visit);
    let entries = interner
        .names
        .into_iter()
        .zip(averaged)
        .flat_map(|(name, row)| {
            Tag::ALL
                .into_iter()
                .zip(row)
                .filter(|(_, w)| *w != 0.0)
                .map(move |(tag, w)| ((name.clone(), tag), w))
        });
    Ok(Model::from_weights(
        entries,
        TrainMeta {
            doc_count: corpus.len(),
            epochs: config.epochs,
            seed: config.seed,
        },
    ))
}

fn decode_interned(
    weights: &[LabelWeights],
    sentence: &Sentence,
    prev_id: &impl Fn(Option<Tag>) -> usize,
) -> Vec<Tag> {
    let static_scores: Vec<LabelWeights> = sentence
        .features
        .iter()
        .map(|feats| {
            let mut acc = [0.0; NUM_TAGS];
            for &f in feats {
                for (a, w) in acc.iter_mut().zip(&weights[f]) {
                    *a += w;
                }
            }
            acc
        })
        .collect();
    greedy(&static_scores, |prev, acc| {
        for (a, w) in acc.iter_mut().zip(&weights[prev_id(prev)]) {
            *a += w;
        }
    })
}
