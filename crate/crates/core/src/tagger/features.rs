//! Feature templates. Every feature string starts with its template id, so
//! values from different templates can never collide.

use crate::corpus::{Tag, Token};

/// Bumped whenever a template changes; stored in model files.
pub const TEMPLATE_VERSION: &str = "v1";

const BOS: &str = "<s>";
const EOS: &str = "</s>";

/// Full feature list for position `index`, ending with the `prev_tag`
/// feature. `prev` is `None` at the start of a sentence.
pub fn extract_features(tokens: &[Token], index: usize, prev: Option<Tag>) -> Vec<String> {
    let mut feats = token_features(tokens, index);
    feats.push(prev_tag_feature(prev));
    feats
}

pub fn prev_tag_feature(prev: Option<Tag>) -> String {
    match prev {
        Some(tag) => format!("prev_tag={tag}"),
        None => format!("prev_tag={BOS}"),
    }
}

/// Every feature that does not depend on the previous tag.
pub fn token_features(tokens: &[Token], index: usize) -> Vec<String> {
    let word_at = |offset: isize| -> Option<&str> {
        let i = index as isize + offset;
        (i >= 0 && (i as usize) < tokens.len()).then(|| tokens[i as usize].text.as_str())
    };
    let sentinel = |offset: isize| if offset < 0 { BOS } else { EOS };

    let mut feats = Vec::with_capacity(32);
    feats.push("bias".to_string());
    for offset in -2..=2isize {
        let value = word_at(offset).map_or_else(|| sentinel(offset).to_string(), str::to_lowercase);
        feats.push(format!("w{}={value}", signed(offset)));
    }
    for offset in -1..=1isize {
        let value = word_at(offset).map_or_else(|| sentinel(offset).to_string(), word_shape);
        feats.push(format!("shape{}={value}", signed(offset)));
    }

    let word = tokens[index].text.as_str();
    let lower: Vec<char> = word.to_lowercase().chars().collect();
    for n in 1..=4.min(lower.len()) {
        let prefix: String = lower[..n].iter().collect();
        let suffix: String = lower[lower.len() - n..].iter().collect();
        feats.push(format!("pre{n}={prefix}"));
        feats.push(format!("suf{n}={suffix}"));
    }

    let has_digit = word.chars().any(|c| c.is_ascii_digit());
    let has_alpha = word.chars().any(char::is_alphabetic);
    let mut rest = word.chars().skip(1);
    let title = word.chars().next().is_some_and(char::is_uppercase)
        && rest.clone().any(char::is_lowercase)
        && !rest.any(char::is_uppercase);
    let flags = [
        ("is_all_digits", word.chars().all(|c| c.is_ascii_digit())),
        ("contains_digit", has_digit),
        ("contains_slash", word.contains('/')),
        ("contains_hyphen", word.contains('-')),
        (
            "is_all_caps",
            has_alpha && !word.chars().any(char::is_lowercase),
        ),
        ("is_title_case", title),
    ];
    for (name, value) in flags {
        feats.push(format!("{name}={value}"));
    }
    feats
}

fn signed(offset: isize) -> String {
    if offset > 0 {
        format!("+{offset}")
    } else {
        offset.to_string()
    }
}

/// `Smith` → `Xxxx`, `8/31` → `d/dd`: case and digit classes, runs longer
/// than three collapsed to three.
pub fn word_shape(word: &str) -> String {
    let mut shape = String::with_capacity(word.len());
    let mut last = None;
    let mut run = 0;
    for c in word.chars() {
        let class = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_ascii_digit() {
            'd'
        } else {
            c
        };
        if Some(class) == last {
            run += 1;
        } else {
            last = Some(class);
            run = 1;
        }
        if run <= 3 {
            shape.push(class);
        }
    }
    shape
}
