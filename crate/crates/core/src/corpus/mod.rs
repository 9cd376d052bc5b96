//! Documents, gold annotations and the token/sentence/tag layers built on
//! top of them.
//!
//! Offsets are byte offsets into the document text and always fall on
//! character boundaries.

mod annotate;
mod bio;
mod io;
mod tokenize;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use annotate::{parse_annotated, parse_annotated_with_stats, serialize_annotated};
pub use bio::{bio_to_spans, spans_to_bio, BioError};
pub use io::{load_corpus_dir, normalize_newlines, write_corpus_dir, CorpusError};
pub use tokenize::{split_sentences, tokenize, ABBREVIATIONS, EDGE_PUNCTUATION};

/// The five PII categories, in canonical (alphabetical) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PiiCategory {
    Address,
    Date,
    Name,
    Number,
    Place,
}

impl PiiCategory {
    pub const ALL: [PiiCategory; 5] = [
        PiiCategory::Address,
        PiiCategory::Date,
        PiiCategory::Name,
        PiiCategory::Number,
        PiiCategory::Place,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PiiCategory::Address => "address",
            PiiCategory::Date => "date",
            PiiCategory::Name => "name",
            PiiCategory::Number => "number",
            PiiCategory::Place => "place",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PiiCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown PII category {0:?}")]
pub struct UnknownCategory(pub String);

impl FromStr for PiiCategory {
    type Err = UnknownCategory;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PiiCategory::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownCategory(s.to_string()))
    }
}

/// A BIO sequence label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    O,
    B(PiiCategory),
    I(PiiCategory),
}

pub const NUM_TAGS: usize = 11;

impl Tag {
    /// Canonical label order: `O`, then `B-`/`I-` pairs by category.
    pub const ALL: [Tag; NUM_TAGS] = [
        Tag::O,
        Tag::B(PiiCategory::Address),
        Tag::I(PiiCategory::Address),
        Tag::B(PiiCategory::Date),
        Tag::I(PiiCategory::Date),
        Tag::B(PiiCategory::Name),
        Tag::I(PiiCategory::Name),
        Tag::B(PiiCategory::Number),
        Tag::I(PiiCategory::Number),
        Tag::B(PiiCategory::Place),
        Tag::I(PiiCategory::Place),
    ];

    /// Position in [`Tag::ALL`].
    pub fn index(self) -> usize {
        match self {
            Tag::O => 0,
            Tag::B(c) => 1 + 2 * c.index(),
            Tag::I(c) => 2 + 2 * c.index(),
        }
    }

    pub fn category(self) -> Option<PiiCategory> {
        match self {
            Tag::O => None,
            Tag::B(c) | Tag::I(c) => Some(c),
        }
    }

    /// Whether `self` may follow `prev` (`None` is the sentence start).
    pub fn may_follow(self, prev: Option<Tag>) -> bool {
        match self {
            Tag::I(c) => matches!(prev, Some(Tag::B(p)) | Some(Tag::I(p)) if p == c),
            _ => true,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::O => f.write_str("O"),
            Tag::B(c) => write!(f, "B-{c}"),
            Tag::I(c) => write!(f, "I-{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid tag {0:?}")]
pub struct InvalidTag(pub String);

impl FromStr for Tag {
    type Err = InvalidTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "O" {
            return Ok(Tag::O);
        }
        let bad = || InvalidTag(s.to_string());
        let (prefix, cat) = s.split_once('-').ok_or_else(bad)?;
        let cat: PiiCategory = cat.parse().map_err(|_| bad())?;
        match prefix {
            "B" => Ok(Tag::B(cat)),
            "I" => Ok(Tag::I(cat)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

/// One PII instance. Token indices are document-level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub category: PiiCategory,
    pub char_start: usize,
    pub char_end: usize,
    pub token_start: usize,
    pub token_end: usize,
}

impl Span {
    pub fn char_range(&self) -> Range<usize> {
        self.char_start..self.char_end
    }

    pub fn token_range(&self) -> Range<usize> {
        self.token_start..self.token_end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Range<usize>>,
}

impl Document {
    /// Tokenize and sentence-split `text`.
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let tokens = tokenize(&text);
        let sentences = split_sentences(&tokens);
        Self {
            id: id.into(),
            text,
            tokens,
            sentences,
        }
    }

    pub fn sentence_tokens(&self, sentence: &Range<usize>) -> &[Token] {
        &self.tokens[sentence.clone()]
    }
}

/// Errors raised while turning marked-up or raw character spans into a
/// validated [`AnnotatedDocument`].
///
/// Marker offsets refer to the marked-up input; span offsets to the cleaned
/// text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unclosed <START:{category}> marker at offset {offset}")]
    UnclosedMarker { category: String, offset: usize },
    #[error("nested <START:…> marker at offset {offset}")]
    NestedMarker { offset: usize },
    #[error("unknown category {name:?} at offset {offset}")]
    UnknownCategory { name: String, offset: usize },
    #[error("marker at offset {offset} encloses only whitespace")]
    EmptySpan { offset: usize },
    #[error("<END> without a matching <START:…> at offset {offset}")]
    UnmatchedEnd { offset: usize },
    #[error("malformed <START marker at offset {offset}")]
    MalformedMarker { offset: usize },
    #[error("spans overlap at text offset {offset}")]
    OverlappingSpans { offset: usize },
    #[error("span {start}..{end} lies outside the text")]
    OutOfBounds { start: usize, end: usize },
}

/// Counters collected while parsing annotated text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseStats {
    pub version: u32,
    pub documents: usize,
    pub tokens: usize,
    pub spans: usize,
    /// Spans whose boundaries fell inside a token and were widened.
    pub snapped_spans: usize,
    pub crlf_normalized_documents: usize,
    pub spans_per_category: BTreeMap<PiiCategory, usize>,
}

pub const PARSE_STATS_VERSION: u32 = 1;

impl Default for ParseStats {
    fn default() -> Self {
        Self {
            version: PARSE_STATS_VERSION,
            documents: 0,
            tokens: 0,
            spans: 0,
            snapped_spans: 0,
            crlf_normalized_documents: 0,
            spans_per_category: PiiCategory::ALL.iter().map(|&c| (c, 0)).collect(),
        }
    }
}

impl ParseStats {
    pub fn merge(&mut self, other: &ParseStats) {
        self.documents += other.documents;
        self.tokens += other.tokens;
        self.spans += other.spans;
        self.snapped_spans += other.snapped_spans;
        self.crlf_normalized_documents += other.crlf_normalized_documents;
        for (cat, n) in &other.spans_per_category {
            *self.spans_per_category.entry(*cat).or_default() += n;
        }
    }

    fn record(&mut self, doc: &AnnotatedDocument) {
        self.documents += 1;
        self.tokens += doc.doc.tokens.len();
        self.spans += doc.spans.len();
        for span in &doc.spans {
            *self.spans_per_category.entry(span.category).or_default() += 1;
        }
    }
}

/// A document together with a set of token-aligned, non-overlapping spans,
/// either gold annotations or tagger output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDocument {
    pub doc: Document,
    pub spans: Vec<Span>,
}

impl AnnotatedDocument {
    /// Build from raw character ranges over `doc.text`.
    ///
    /// Ranges are snapped outward to token boundaries and the number of
    /// widened spans is added to `stats`. Sentences that would split a span
    /// are merged so every span lies inside one sentence.
    pub fn from_char_spans(
        mut doc: Document,
        raw: &[(PiiCategory, Range<usize>)],
        stats: &mut ParseStats,
    ) -> Result<Self, ParseError> {
        let mut spans = Vec::with_capacity(raw.len());
        for (category, range) in raw {
            if range.start >= range.end
                || range.end > doc.text.len()
                || !doc.text.is_char_boundary(range.start)
                || !doc.text.is_char_boundary(range.end)
            {
                return Err(ParseError::OutOfBounds {
                    start: range.start,
                    end: range.end,
                });
            }
            let token_start = doc.tokens.partition_point(|t| t.end <= range.start);
            let token_end = doc.tokens.partition_point(|t| t.start < range.end);
            if token_start >= token_end {
                return Err(ParseError::EmptySpan {
                    offset: range.start,
                });
            }
            let char_start = doc.tokens[token_start].start;
            let char_end = doc.tokens[token_end - 1].end;
            if char_start != range.start || char_end != range.end {
                stats.snapped_spans += 1;
            }
            spans.push(Span {
                category: *category,
                char_start,
                char_end,
                token_start,
                token_end,
            });
        }
        spans.sort_by_key(|s| (s.char_start, s.char_end));
        if let Some(w) = spans.windows(2).find(|w| w[1].char_start < w[0].char_end) {
            return Err(ParseError::OverlappingSpans {
                offset: w[1].char_start,
            });
        }
        doc.sentences = merge_split_spans(&doc.sentences, &spans);
        let annotated = Self { doc, spans };
        stats.record(&annotated);
        Ok(annotated)
    }

    /// Wrap already-aligned spans. Used for tagger output, whose spans come
    /// from whole-token tag runs by construction.
    pub(crate) fn from_aligned(doc: Document, mut spans: Vec<Span>) -> Self {
        spans.sort_by_key(|s| s.char_start);
        Self { doc, spans }
    }

    pub fn id(&self) -> &str {
        &self.doc.id
    }

    pub fn text(&self) -> &str {
        &self.doc.text
    }

    /// The surface string covered by `span`.
    pub fn span_text(&self, span: &Span) -> &str {
        &self.doc.text[span.char_range()]
    }
}

fn merge_split_spans(sentences: &[Range<usize>], spans: &[Span]) -> Vec<Range<usize>> {
    let mut starts: BTreeSet<usize> = sentences.iter().map(|s| s.start).collect();
    for span in spans {
        let inner: Vec<usize> = starts
            .range(span.token_start + 1..span.token_end)
            .copied()
            .collect();
        for s in inner {
            starts.remove(&s);
        }
    }
    let ends = sentences.last().map_or(0, |s| s.end);
    let starts: Vec<usize> = starts.into_iter().collect();
    starts
        .iter()
        .enumerate()
        .map(|(i, &s)| s..starts.get(i + 1).copied().unwrap_or(ends))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate document id {0:?}")]
pub struct DuplicateId(pub String);

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    docs: Vec<AnnotatedDocument>,
}

impl Corpus {
    pub fn new(docs: Vec<AnnotatedDocument>) -> Result<Self, DuplicateId> {
        let mut seen = HashSet::new();
        for d in &docs {
            if !seen.insert(d.id()) {
                return Err(DuplicateId(d.id().to_string()));
            }
        }
        Ok(Self { docs })
    }

    pub fn docs(&self) -> &[AnnotatedDocument] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.docs.iter().map(|d| d.id()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&AnnotatedDocument> {
        self.docs.iter().find(|d| d.id() == id)
    }

    /// Documents whose ids are in `ids`, in corpus order.
    pub fn subset(&self, ids: &[String]) -> Corpus {
        let wanted: HashSet<&str> = ids.iter().map(String::as_str).collect();
        Corpus {
            docs: self
                .docs
                .iter()
                .filter(|d| wanted.contains(d.id()))
                .cloned()
                .collect(),
        }
    }

    pub fn category_counts(&self) -> BTreeMap<PiiCategory, usize> {
        let mut counts: BTreeMap<PiiCategory, usize> =
            PiiCategory::ALL.iter().map(|&c| (c, 0)).collect();
        for span in self.docs.iter().flat_map(|d| &d.spans) {
            *counts.entry(span.category).or_default() += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_parsing_is_case_insensitive() {
        assert_eq!("NAME".parse::<PiiCategory>().unwrap(), PiiCategory::Name);
        assert_eq!("Place".parse::<PiiCategory>().unwrap(), PiiCategory::Place);
        assert!("phone".parse::<PiiCategory>().is_err());
    }

    #[test]
    fn tag_order_and_names() {
        assert_eq!(Tag::ALL[0], Tag::O);
        for (i, tag) in Tag::ALL.iter().enumerate() {
            assert_eq!(tag.index(), i);
            assert_eq!(tag.to_string().parse::<Tag>().unwrap(), *tag);
        }
        assert_eq!(Tag::ALL[5].to_string(), "B-name");
        assert!("X-name".parse::<Tag>().is_err());
        assert!("B-phone".parse::<Tag>().is_err());
    }

    #[test]
    fn inside_tags_need_a_matching_predecessor() {
        let i_name = Tag::I(PiiCategory::Name);
        assert!(!i_name.may_follow(None));
        assert!(!i_name.may_follow(Some(Tag::O)));
        assert!(!i_name.may_follow(Some(Tag::B(PiiCategory::Date))));
        assert!(i_name.may_follow(Some(Tag::B(PiiCategory::Name))));
        assert!(i_name.may_follow(Some(i_name)));
        assert!(Tag::O.may_follow(None));
    }

    #[test]
    fn snapping_widens_and_counts() {
        let doc = Document::new("d", "Call Smithson today.");
        let mut stats = ParseStats::default();
        let ann =
            AnnotatedDocument::from_char_spans(doc, &[(PiiCategory::Name, 5..10)], &mut stats)
                .unwrap();
        assert_eq!(ann.span_text(&ann.spans[0]), "Smithson");
        assert_eq!(stats.snapped_spans, 1);
        assert_eq!(stats.spans_per_category[&PiiCategory::Name], 1);
    }

    #[test]
    fn spans_overlapping_after_snapping_are_rejected() {
        let doc = Document::new("d", "ref AB12 end");
        let err = AnnotatedDocument::from_char_spans(
            doc,
            &[(PiiCategory::Name, 4..6), (PiiCategory::Number, 6..8)],
            &mut ParseStats::default(),
        )
        .unwrap_err();
        assert_eq!(err, ParseError::OverlappingSpans { offset: 4 });
    }

    #[test]
    fn sentences_never_split_a_span() {
        let doc = Document::new("d", "Seen at Mercy Hosp. Annex today. Fine.");
        assert_eq!(doc.sentences.len(), 3);
        let start = doc.text.find("Mercy").unwrap();
        let end = doc.text.find(" today").unwrap();
        let ann = AnnotatedDocument::from_char_spans(
            doc,
            &[(PiiCategory::Place, start..end)],
            &mut ParseStats::default(),
        )
        .unwrap();
        assert_eq!(ann.doc.sentences.len(), 2);
        let span = ann.spans[0];
        assert!(ann
            .doc
            .sentences
            .iter()
            .any(|s| s.start <= span.token_start && span.token_end <= s.end));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let a = AnnotatedDocument::from_aligned(Document::new("a", "x"), vec![]);
        assert!(Corpus::new(vec![a.clone(), a]).is_err());
    }
}
