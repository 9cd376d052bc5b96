use std::ops::Range;

use super::Token;

/// Characters split off as single-character tokens at the edge of a
/// whitespace-delimited run.
pub const EDGE_PUNCTUATION: [char; 9] = ['.', ',', ';', ':', '!', '?', '(', ')', '"'];

/// Tokens (with their period) after which a `.` does not end a sentence.
pub const ABBREVIATIONS: [&str; 12] = [
    "Dr.", "Mr.", "Mrs.", "Ms.", "M.D.", "D.O.", "St.", "No.", "Inc.", "Jr.", "Sr.", "vs.",
];

fn is_edge_punct(b: u8) -> bool {
    EDGE_PUNCTUATION.contains(&(b as char))
}

/// `M.D.`, `U.S.A.`, `J.`: single capitals each followed by a period.
fn is_capital_period_run(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty()
        && b.len().is_multiple_of(2)
        && b.chunks(2)
            .all(|c| c[0].is_ascii_uppercase() && c[1] == b'.')
}

/// Split `text` into tokens with byte offsets.
///
/// Each maximal non-whitespace run yields its leading and trailing edge
/// punctuation as single-character tokens and the remainder as one token.
/// A trailing period is kept when the remainder is a capital-period run
/// such as `M.D.`. Interior punctuation is never split.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut push = |start: usize, end: usize| {
        tokens.push(Token {
            text: text[start..end].to_string(),
            start,
            end,
        })
    };

    for run in whitespace_runs(text) {
        let mut lo = run.start;
        while lo < run.end && is_edge_punct(bytes[lo]) {
            push(lo, lo + 1);
            lo += 1;
        }
        let mut hi = run.end;
        let mut trailing = Vec::new();
        while hi > lo && is_edge_punct(bytes[hi - 1]) {
            if bytes[hi - 1] == b'.' && is_capital_period_run(&text[lo..hi]) {
                break;
            }
            trailing.push(hi - 1);
            hi -= 1;
        }
        if hi > lo {
            push(lo, hi);
        }
        for &p in trailing.iter().rev() {
            push(p, p + 1);
        }
    }
    tokens
}

fn whitespace_runs(text: &str) -> impl Iterator<Item = Range<usize>> + '_ {
    let mut iter = text.char_indices().peekable();
    std::iter::from_fn(move || {
        while let Some(&(_, c)) = iter.peek() {
            if !c.is_whitespace() {
                break;
            }
            iter.next();
        }
        let (start, _) = *iter.peek()?;
        let mut end = start;
        while let Some(&(i, c)) = iter.peek() {
            if c.is_whitespace() {
                break;
            }
            end = i + c.len_utf8();
            iter.next();
        }
        Some(start..end)
    })
}

/// Group tokens into sentences, returned as token-index ranges.
///
/// A sentence ends after `.`, `!` or `?` when the next token begins with an
/// uppercase letter or digit, unless the period completes an abbreviation
/// from [`ABBREVIATIONS`].
pub fn split_sentences(tokens: &[Token]) -> Vec<Range<usize>> {
    let mut sentences = Vec::new();
    let mut start = 0;
    for i in 0..tokens.len() {
        let Some(next) = tokens.get(i + 1) else {
            break;
        };
        if !matches!(tokens[i].text.as_str(), "." | "!" | "?") {
            continue;
        }
        let opens = next
            .text
            .chars()
            .next()
            .is_some_and(|c| c.is_uppercase() || c.is_ascii_digit());
        if !opens || is_abbreviation_period(tokens, i) {
            continue;
        }
        sentences.push(start..i + 1);
        start = i + 1;
    }
    if start < tokens.len() {
        sentences.push(start..tokens.len());
    }
    sentences
}

fn is_abbreviation_period(tokens: &[Token], i: usize) -> bool {
    if tokens[i].text != "." || i == 0 {
        return false;
    }
    let prev = &tokens[i - 1];
    if prev.end != tokens[i].start {
        return false;
    }
    ABBREVIATIONS
        .iter()
        .any(|a| a.strip_suffix('.') == Some(prev.text.as_str()))
}
