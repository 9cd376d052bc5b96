use std::ops::Range;

use thiserror::Error;

use super::{Document, Span, Tag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BioError {
    #[error("span {char_start}..{char_end} does not align with token boundaries")]
    MisalignedSpan { char_start: usize, char_end: usize },
    #[error("span over tokens {token_start}..{token_end} crosses a sentence boundary")]
    CrossesSentence {
        token_start: usize,
        token_end: usize,
    },
}

/// Encode the spans falling in `sentence` as one BIO tag per token.
///
/// Spans entirely outside the sentence are ignored.
pub fn spans_to_bio(
    doc: &Document,
    sentence: &Range<usize>,
    spans: &[Span],
) -> Result<Vec<Tag>, BioError> {
    let mut tags = vec![Tag::O; sentence.len()];
    for span in spans {
        if span.token_end <= sentence.start || span.token_start >= sentence.end {
            continue;
        }
        if span.token_start < sentence.start || span.token_end > sentence.end {
            return Err(BioError::CrossesSentence {
                token_start: span.token_start,
                token_end: span.token_end,
            });
        }
        let aligned = span.token_start < span.token_end
            && doc.tokens[span.token_start].start == span.char_start
            && doc.tokens[span.token_end - 1].end == span.char_end;
        if !aligned {
            return Err(BioError::MisalignedSpan {
                char_start: span.char_start,
                char_end: span.char_end,
            });
        }
        let first = span.token_start - sentence.start;
        tags[first] = Tag::B(span.category);
        for tag in &mut tags[first + 1..span.token_end - sentence.start] {
            *tag = Tag::I(span.category);
        }
    }
    Ok(tags)
}

/// Decode BIO tags over `sentence` back into spans.
///
/// An `I-X` that does not continue an `X` run opens a new span.
pub fn bio_to_spans(doc: &Document, sentence: &Range<usize>, tags: &[Tag]) -> Vec<Span> {
    debug_assert_eq!(tags.len(), sentence.len());
    let mut spans = Vec::new();
    let mut open: Option<Span> = None;
    for (offset, &tag) in tags.iter().enumerate() {
        let idx = sentence.start + offset;
        let token = &doc.tokens[idx];
        match (tag, open.as_mut()) {
            (Tag::I(c), Some(span)) if span.category == c => {
                span.token_end = idx + 1;
                span.char_end = token.end;
            }
            (Tag::O, _) => spans.extend(open.take()),
            (Tag::B(c) | Tag::I(c), _) => {
                spans.extend(open.take());
                open = Some(Span {
                    category: c,
                    char_start: token.start,
                    char_end: token.end,
                    token_start: idx,
                    token_end: idx + 1,
                });
            }
        }
    }
    spans.extend(open);
    spans
}
