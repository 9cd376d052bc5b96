//! De-identification of a tagged document: delete spans, replace them with
//! `[CATEGORY]` placeholders, or substitute consistent surrogates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{AnnotatedDocument, PiiCategory};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedactionMode {
    Remove,
    Placeholder,
    Pseudonym,
}

impl fmt::Display for RedactionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RedactionMode::Remove => "remove",
            RedactionMode::Placeholder => "placeholder",
            RedactionMode::Pseudonym => "pseudonym",
        })
    }
}

impl FromStr for RedactionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "remove" => Ok(RedactionMode::Remove),
            "placeholder" => Ok(RedactionMode::Placeholder),
            "pseudonym" => Ok(RedactionMode::Pseudonym),
            other => Err(format!(
                "unknown redaction mode {other:?} (expected remove, placeholder or pseudonym)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudonymEntry {
    pub category: PiiCategory,
    pub original: String,
    pub surrogate: String,
}

/// Surrogates used in one document, sorted by `(category, original)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudonymMap {
    pub document: String,
    pub seed: u64,
    pub entries: Vec<PseudonymEntry>,
}

impl PseudonymMap {
    pub fn get(&self, category: PiiCategory, original: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.category == category && e.original == original)
            .map(|e| e.surrogate.as_str())
    }
}

/// Where one span ended up in the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    pub category: PiiCategory,
    pub input: Range<usize>,
    pub output: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redacted {
    pub text: String,
    /// Present only in pseudonym mode.
    pub map: Option<PseudonymMap>,
    pub sites: Vec<Site>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RedactError {
    #[error("spans overlap at offset {0}")]
    OverlappingSpans(usize),
    #[error("span {start}..{end} lies outside the text")]
    OutOfBounds { start: usize, end: usize },
}

pub fn placeholder(category: PiiCategory) -> String {
    format!("[{}]", category.as_str().to_uppercase())
}

/// Apply `mode` to every span of `doc`.
///
/// The result is the same as substituting spans from the last to the first.
/// In remove mode, when a deletion leaves whitespace on both sides of the
/// deletion site, the whitespace to the right of the site is dropped.
pub fn redact(
    doc: &AnnotatedDocument,
    mode: RedactionMode,
    seed: u64,
) -> Result<Redacted, RedactError> {
    let text = doc.text();
    let mut spans = doc.spans.clone();
    spans.sort_by_key(|s| s.char_start);
    for s in &spans {
        if s.char_start >= s.char_end
            || s.char_end > text.len()
            || !text.is_char_boundary(s.char_start)
            || !text.is_char_boundary(s.char_end)
        {
            return Err(RedactError::OutOfBounds {
                start: s.char_start,
                end: s.char_end,
            });
        }
    }
    if let Some(w) = spans.windows(2).find(|w| w[1].char_start < w[0].char_end) {
        return Err(RedactError::OverlappingSpans(w[1].char_start));
    }

    let mut surrogates: BTreeMap<(PiiCategory, String), String> = BTreeMap::new();
    let mut out = String::with_capacity(text.len());
    let mut sites = Vec::with_capacity(spans.len());
    let mut pos = 0;
    let mut after_removal = false;

    for span in &spans {
        push_gap(&mut out, &text[pos..span.char_start], after_removal);
        let original = &text[span.char_range()];
        let replacement = match mode {
            RedactionMode::Remove => String::new(),
            RedactionMode::Placeholder => placeholder(span.category),
            RedactionMode::Pseudonym => surrogates
                .entry((span.category, original.to_string()))
                .or_insert_with(|| surrogate(seed, span.category, original))
                .clone(),
        };
        let start = out.len();
        out.push_str(&replacement);
        sites.push(Site {
            category: span.category,
            input: span.char_range(),
            output: start..out.len(),
        });
        pos = span.char_end;
        after_removal = mode == RedactionMode::Remove;
    }
    push_gap(&mut out, &text[pos..], after_removal);

    let map = (mode == RedactionMode::Pseudonym).then(|| PseudonymMap {
        document: doc.id().to_string(),
        seed,
        entries: surrogates
            .into_iter()
            .map(|((category, original), surrogate)| PseudonymEntry {
                category,
                original,
                surrogate,
            })
            .collect(),
    });
    Ok(Redacted {
        text: out,
        map,
        sites,
    })
}

fn push_gap(out: &mut String, gap: &str, after_removal: bool) {
    if after_removal && out.ends_with(char::is_whitespace) {
        out.push_str(gap.trim_start());
    } else {
        out.push_str(gap);
    }
}

/// Deterministic surrogate for `original`, never equal to it.
pub fn surrogate(seed: u64, category: PiiCategory, original: &str) -> String {
    for attempt in 0u32..64 {
        let mut hasher = Sha256::new();
        hasher.update(seed.to_le_bytes());
        hasher.update(category.as_str().as_bytes());
        hasher.update([0]);
        hasher.update(original.as_bytes());
        hasher.update([0]);
        hasher.update(attempt.to_le_bytes());
        let digest = hasher.finalize();
        let key = u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"));
        let candidate = build_surrogate(category, original, &mut SplitMix64::new(key));
        if candidate != original {
            return candidate;
        }
    }
    format!("{}-{:08x}", placeholder(category), original.len())
}

const GIVEN: [&str; 20] = [
    "Avery", "Blair", "Casey", "Dana", "Emery", "Finley", "Harper", "Jordan", "Kendall", "Logan",
    "Morgan", "Parker", "Quinn", "Reese", "Rowan", "Sage", "Skyler", "Taylor", "Tatum", "Wren",
];
const SURNAMES: [&str; 20] = [
    "Ashdown",
    "Birchwell",
    "Calloway",
    "Dunmore",
    "Ellery",
    "Fenwick",
    "Garrow",
    "Halden",
    "Ingleby",
    "Jessop",
    "Kettering",
    "Lockwood",
    "Marlowe",
    "Northam",
    "Oakley",
    "Penrose",
    "Quarry",
    "Radley",
    "Stanton",
    "Thornbury",
];
const TOWNS: [&str; 12] = [
    "Alder Creek",
    "Bramble Hill",
    "Cedar Bend",
    "Dover Flats",
    "Elm Hollow",
    "Fox Run",
    "Granite Falls",
    "Heron Point",
    "Iron Gate",
    "Juniper Vale",
    "Kestrel Bay",
    "Linden Cross",
];
const PLACE_KINDS: [&str; 6] = [
    "Clinic",
    "Medical Group",
    "Health Center",
    "Rehabilitation",
    "Hospital",
    "Imaging",
];
const STREETS: [&str; 10] = [
    "Amber", "Birch", "Cobble", "Drift", "Ember", "Fern", "Grove", "Harbor", "Ivy", "Lantern",
];
const STREET_KINDS: [&str; 5] = ["St.", "Ave.", "Rd.", "Ln.", "Way"];
const STATES: [&str; 10] = ["AK", "CO", "DE", "IA", "KS", "ME", "NV", "OR", "UT", "VT"];

const MONTHS: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

/// A lone word maps to a surname; a trailing credential is kept.
fn name_surrogate(original: &str, rng: &mut SplitMix64) -> String {
    let (person, credential) = match original.rsplit_once(", ") {
        Some((p, c)) if c.ends_with('.') => (p, Some(c)),
        _ => (original, None),
    };
    let mut name = if person.split_whitespace().count() > 1 {
        format!("{} {}", rng.pick(&GIVEN), rng.pick(&SURNAMES))
    } else {
        rng.pick(&SURNAMES).to_string()
    };
    if let Some(c) = credential {
        name.push_str(", ");
        name.push_str(c);
    }
    name
}

/// Month-name dates stay month-name dates; numeric dates keep their
/// separators, field count and field widths.
fn date_surrogate(original: &str, rng: &mut SplitMix64) -> String {
    let (month, day) = (rng.range_inclusive(1, 12), rng.range_inclusive(1, 28));
    let year = rng.range_inclusive(1950, 2020);
    if original
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
    {
        let mut out = format!("{} {day}", MONTHS[month - 1]);
        if original.contains(',') {
            out.push_str(&format!(", {year}"));
        }
        return out;
    }
    let mut out = String::new();
    let mut field = 0;
    for part in original.split_inclusive(|c: char| !c.is_ascii_digit()) {
        let digits = part.trim_end_matches(|c: char| !c.is_ascii_digit());
        let value = match field {
            0 => month,
            1 => day,
            _ => year % 10usize.pow(digits.len().min(4) as u32),
        };
        if !digits.is_empty() {
            out.push_str(&format!("{value:0width$}", width = digits.len()));
            field += 1;
        }
        out.push_str(&part[digits.len()..]);
    }
    out
}

fn build_surrogate(category: PiiCategory, original: &str, rng: &mut SplitMix64) -> String {
    match category {
        PiiCategory::Name => name_surrogate(original, rng),
        PiiCategory::Date => date_surrogate(original, rng),
        PiiCategory::Place => format!("{} {}", rng.pick(&TOWNS), rng.pick(&PLACE_KINDS)),
        PiiCategory::Address => format!(
            "{} {} {}, {}, {} {:05}",
            rng.range_inclusive(10, 9999),
            rng.pick(&STREETS),
            rng.pick(&STREET_KINDS),
            rng.pick(&TOWNS),
            rng.pick(&STATES),
            rng.below(100_000)
        ),
        PiiCategory::Number => {
            // Keep the layout: digits stay digits, letters stay letters.
            let shaped: String = original
                .chars()
                .map(|c| {
                    if c.is_ascii_digit() {
                        char::from(b'0' + rng.below(10) as u8)
                    } else if c.is_ascii_alphabetic() {
                        char::from(b'A' + rng.below(26) as u8)
                    } else {
                        c
                    }
                })
                .collect();
            if shaped.chars().any(|c| c.is_ascii_alphanumeric()) {
                shaped
            } else {
                format!("{:06}", rng.below(1_000_000))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_annotated;

    const SEEN: &str = "Seen by <START:name>John Smith, M.D.<END> on <START:date>5/3/2000<END>.";

    #[test]
    fn placeholder_mode() {
        let doc = parse_annotated("d", SEEN).unwrap();
        let out = redact(&doc, RedactionMode::Placeholder, 0).unwrap();
        assert_eq!(out.text, "Seen by [NAME] on [DATE].");
        assert!(out.map.is_none());
        assert_eq!(&out.text[out.sites[1].output.clone()], "[DATE]");
    }

    #[test]
    fn remove_mode_collapses_doubled_spaces() {
        let doc = parse_annotated("d", SEEN).unwrap();
        let out = redact(&doc, RedactionMode::Remove, 0).unwrap();
        assert_eq!(out.text, "Seen by on .");
        let doc = parse_annotated("d", "Name:\n<START:name>Ann Lee<END>\nNext line").unwrap();
        assert_eq!(
            redact(&doc, RedactionMode::Remove, 0).unwrap().text,
            "Name:\nNext line"
        );
    }

    #[test]
    fn zero_spans_leave_text_unchanged() {
        let doc = parse_annotated("d", "nothing  to\nredact ").unwrap();
        for mode in [
            RedactionMode::Remove,
            RedactionMode::Placeholder,
            RedactionMode::Pseudonym,
        ] {
            assert_eq!(redact(&doc, mode, 1).unwrap().text, doc.text());
        }
    }

    #[test]
    fn pseudonyms_are_consistent_within_a_document() {
        let doc = parse_annotated(
            "d",
            "<START:name>Ann Lee<END> called. Later <START:name>Ann Lee<END> and \
             <START:name>Bo Park<END> met on <START:date>8/31<END>.",
        )
        .unwrap();
        let out = redact(&doc, RedactionMode::Pseudonym, 7).unwrap();
        let map = out.map.as_ref().unwrap();
        assert_eq!(map.entries.len(), 3);
        let first = &out.text[out.sites[0].output.clone()];
        let second = &out.text[out.sites[1].output.clone()];
        assert_eq!(first, second);
        assert_eq!(map.get(PiiCategory::Name, "Ann Lee"), Some(first));
        for e in &map.entries {
            assert_ne!(e.original, e.surrogate);
        }
        assert_eq!(redact(&doc, RedactionMode::Pseudonym, 7).unwrap(), out);
    }

    #[test]
    fn number_surrogates_keep_their_layout() {
        let s = surrogate(3, PiiCategory::Number, "AL-12345");
        assert_eq!(s.len(), 8);
        assert_eq!(&s[2..3], "-");
        assert!(s[..2].chars().all(|c| c.is_ascii_uppercase()));
        assert!(s[3..].chars().all(|c| c.is_ascii_digit()));
        assert_ne!(s, "AL-12345");
        assert_ne!(surrogate(3, PiiCategory::Number, "--"), "--");
    }

    #[test]
    fn names_and_dates_keep_their_shape() {
        for seed in 0..20 {
            let lone = surrogate(seed, PiiCategory::Name, "Smith");
            assert_eq!(lone.split_whitespace().count(), 1, "{lone}");
            let full = surrogate(seed, PiiCategory::Name, "John Smith, M.D.");
            assert!(
                full.ends_with(", M.D.") && full.split_whitespace().count() == 3,
                "{full}"
            );

            let padded = surrogate(seed, PiiCategory::Date, "09/03/2020");
            let fields: Vec<&str> = padded.split('/').collect();
            assert_eq!(
                fields.iter().map(|f| f.len()).collect::<Vec<_>>(),
                [2, 2, 4],
                "{padded}"
            );
            let short = surrogate(seed, PiiCategory::Date, "8/31");
            assert_eq!(short.split('/').count(), 2, "{short}");
            let long = surrogate(seed, PiiCategory::Date, "March 1, 2019");
            assert!(
                long.contains(", ") && long.split(' ').count() == 3,
                "{long}"
            );
            assert!(!surrogate(seed, PiiCategory::Date, "March 1").contains(','));
        }
    }

    #[test]
    fn overlapping_spans_are_rejected() {
        let mut doc = parse_annotated("d", "<START:name>Ann Lee<END> x").unwrap();
        let mut extra = doc.spans[0];
        extra.char_start += 1;
        extra.category = PiiCategory::Place;
        doc.spans.push(extra);
        assert_eq!(
            redact(&doc, RedactionMode::Placeholder, 0),
            Err(RedactError::OverlappingSpans(1))
        );
    }

    #[test]
    fn mode_names() {
        for mode in [
            RedactionMode::Remove,
            RedactionMode::Placeholder,
            RedactionMode::Pseudonym,
        ] {
            assert_eq!(mode.to_string().parse::<RedactionMode>().unwrap(), mode);
        }
        assert!("encode".parse::<RedactionMode>().is_err());
    }
}
