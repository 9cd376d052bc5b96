//! Seeded generators shared by the integration suites.

#![allow(dead_code)]

use deid_core::rng::SplitMix64;
use deid_core::tagger::TrainMeta;
use deid_core::{Model, PiiCategory, Span, Tag};

/// Filler words, including abbreviations, edge punctuation and line breaks.
pub const WORDS: &[&str] = &[
    "the",
    "patient",
    "was",
    "seen",
    "Dr.",
    "Mr.",
    "on",
    "at",
    "St.",
    "M.D.",
    "(",
    ")",
    ",",
    "end.",
    "Next",
    "5",
    "weeks.",
    "A.",
    "vs.",
    "\n",
    "\n\n",
    "reported",
    "pain?",
    "Yes!",
    "x;",
    "\"quoted\"",
    "3:15",
    "L4-5",
    "naïve",
];

/// Words allowed inside a span; none start or end with whitespace.
pub const PII_WORDS: &[&str] = &[
    "John", "Smith", "8/31", "AL-12345", "Elm", "St.,", "Any", "Town,", "M.D.", "Mercy",
    "Hospital", "2019.", "(555)", "123-4567", "Ángel",
];

pub fn category(rng: &mut SplitMix64) -> PiiCategory {
    *rng.pick(&PiiCategory::ALL)
}

/// Annotated text whose markers sit on token boundaries.
pub fn marked_document(rng: &mut SplitMix64) -> String {
    let mut parts = Vec::new();
    for _ in 0..rng.range_inclusive(0, 12) {
        if rng.chance(1, 3) {
            let words: Vec<&str> = (0..rng.range_inclusive(1, 3))
                .map(|_| *rng.pick(PII_WORDS))
                .collect();
            parts.push(format!(
                "<START:{}>{}<END>",
                category(rng).as_str(),
                words.join(" ")
            ));
        } else {
            for _ in 0..rng.range_inclusive(1, 4) {
                parts.push(rng.pick(WORDS).to_string());
            }
        }
    }
    parts.join(" ")
}

/// Non-overlapping spans over a text of `len` bytes. Token fields are
/// irrelevant to matching and left at zero.
pub fn random_spans(rng: &mut SplitMix64, len: usize) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut at = 0;
    while at < len {
        at += rng.below(8);
        let end = at + 1 + rng.below(6);
        if end > len {
            break;
        }
        spans.push(Span {
            category: category(rng),
            char_start: at,
            char_end: end,
            token_start: 0,
            token_end: 0,
        });
        at = end;
    }
    spans
}

/// Perturb `gold` so predictions share some spans and miss others.
pub fn perturbed_spans(rng: &mut SplitMix64, gold: &[Span], len: usize) -> Vec<Span> {
    let mut predicted = Vec::new();
    for s in gold {
        match rng.below(5) {
            0 => {}
            1 => predicted.push(Span {
                category: category(rng),
                ..*s
            }),
            2 => predicted.push(Span {
                char_end: (s.char_end + 1).min(len),
                ..*s
            }),
            _ => predicted.push(*s),
        }
    }
    if rng.chance(1, 2) {
        let extra: Vec<Span> = random_spans(rng, len)
            .into_iter()
            .filter(|e| {
                predicted
                    .iter()
                    .all(|p| e.char_end <= p.char_start || p.char_end <= e.char_start)
            })
            .collect();
        predicted.extend(extra);
    }
    predicted
}

/// Sparse model with features that look like real templates.
pub fn random_model(rng: &mut SplitMix64) -> Model {
    let features = [
        "bias",
        "w0=smith",
        "shape0=Xxxx",
        "prev_tag=O",
        "prev_tag=<s>",
        "suf3=ith",
        "w-1=dr.",
        "w0=\"q\\u\"",
    ];
    let mut entries = Vec::new();
    for _ in 0..rng.range_inclusive(0, 40) {
        let feature = *rng.pick(&features);
        let tag = *rng.pick(&Tag::ALL);
        let value = (rng.next_u64() as i64 as f64) / (1u64 << rng.range_inclusive(10, 62)) as f64;
        entries.push(((feature, tag), value));
    }
    let meta = TrainMeta {
        doc_count: rng.below(100),
        epochs: rng.range_inclusive(1, 50),
        seed: rng.next_u64(),
    };
    Model::from_weights(entries, meta)
}
