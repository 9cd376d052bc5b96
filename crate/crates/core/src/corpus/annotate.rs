//! The inline annotation format: `<START:category>content<END>`.

use super::{AnnotatedDocument, Document, ParseError, ParseStats, PiiCategory};

const START: &str = "<START:";
const END: &str = "<END>";

/// Parse marked-up text into a document with gold spans.
pub fn parse_annotated(id: &str, marked: &str) -> Result<AnnotatedDocument, ParseError> {
    parse_annotated_with_stats(id, marked, &mut ParseStats::default())
}

/// Like [`parse_annotated`], accumulating counters into `stats`.
///
/// Marker substrings are deleted and nothing else is changed. Span content
/// is trimmed of surrounding whitespace, then snapped to token boundaries.
pub fn parse_annotated_with_stats(
    id: &str,
    marked: &str,
    stats: &mut ParseStats,
) -> Result<AnnotatedDocument, ParseError> {
    let mut clean = String::with_capacity(marked.len());
    let mut raw = Vec::new();
    // (category, clean offset, marked offset)
    let mut open: Option<(PiiCategory, usize, usize)> = None;
    let mut i = 0;

    while i < marked.len() {
        let rest = &marked[i..];
        if let Some(after) = rest.strip_prefix(START) {
            let close = after
                .find('>')
                .ok_or(ParseError::MalformedMarker { offset: i })?;
            if open.is_some() {
                return Err(ParseError::NestedMarker { offset: i });
            }
            let name = &after[..close];
            let category: PiiCategory = name.parse().map_err(|_| ParseError::UnknownCategory {
                name: name.to_string(),
                offset: i,
            })?;
            open = Some((category, clean.len(), i));
            i += START.len() + close + 1;
        } else if rest.starts_with(END) {
            let (category, start, at) =
                open.take().ok_or(ParseError::UnmatchedEnd { offset: i })?;
            let content = &clean[start..];
            let lead = content.len() - content.trim_start().len();
            let trail = content.len() - content.trim_end().len();
            if lead == content.len() {
                return Err(ParseError::EmptySpan { offset: at });
            }
            raw.push((category, start + lead..clean.len() - trail));
            i += END.len();
        } else {
            let c = rest.chars().next().expect("non-empty remainder");
            clean.push(c);
            i += c.len_utf8();
        }
    }
    if let Some((category, _, offset)) = open {
        return Err(ParseError::UnclosedMarker {
            category: category.to_string(),
            offset,
        });
    }

    AnnotatedDocument::from_char_spans(Document::new(id, clean), &raw, stats)
}

/// Write `doc` back out with a marker pair around every span.
pub fn serialize_annotated(doc: &AnnotatedDocument) -> String {
    let text = doc.text();
    let mut out = String::with_capacity(text.len() + doc.spans.len() * 20);
    let mut pos = 0;
    for span in &doc.spans {
        out.push_str(&text[pos..span.char_start]);
        out.push_str(START);
        out.push_str(span.category.as_str());
        out.push('>');
        out.push_str(&text[span.char_range()]);
        out.push_str(END);
        pos = span.char_end;
    }
    out.push_str(&text[pos..]);
    out
}
