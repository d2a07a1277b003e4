//! Tokenization and statement segmentation shared by claim extraction and
//! the integrity metrics.

use serde::{Deserialize, Serialize};
use unicode_segmentation::UnicodeSegmentation;

/// Half-open range of character (Unicode scalar) offsets into a text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// Slice `text` by this character span.
    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        let mut indices = text.char_indices().map(|(b, _)| b).chain(std::iter::once(text.len()));
        let start = indices.nth(self.start).unwrap_or(text.len());
        let end = if self.end > self.start {
            indices.nth(self.end - self.start - 1).unwrap_or(text.len())
        } else {
            start
        };
        &text[start..end]
    }
}

/// Unicode word segmentation (UAX #29), lowercased, punctuation dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.unicode_words().map(str::to_lowercase).collect()
}

const BULLETS: &[char] = &['•', '‣', '◦', '▪', '●', '·', '-', '*', '–'];

/// Split text into statements: every line is its own unit (bullet marker
/// stripped), and inside a line a sentence ends at `.`, `?` or `!` followed
/// by whitespace and an uppercase letter. Segments without an alphabetic
/// character are dropped.
pub fn statement_spans(text: &str) -> Vec<Span> {
    let chars: Vec<char> = text.chars().collect();
    let mut spans = Vec::new();
    let mut line_start = 0;
    while line_start <= chars.len() {
        let line_end = chars[line_start..]
            .iter()
            .position(|&c| c == '\n')
            .map_or(chars.len(), |p| line_start + p);
        split_line(&chars, line_start, line_end, &mut spans);
        line_start = line_end + 1;
    }
    spans
}

fn split_line(chars: &[char], start: usize, end: usize, out: &mut Vec<Span>) {
    let mut i = start;
    while i < end && chars[i].is_whitespace() {
        i += 1;
    }
    if i < end && BULLETS.contains(&chars[i]) {
        let marker = chars[i];
        let followed_by_space = i + 1 >= end || chars[i + 1].is_whitespace();
        if marker == '•' || marker == '●' || marker == '▪' || marker == '‣' || marker == '◦' || followed_by_space {
            i += 1;
            while i < end && chars[i].is_whitespace() {
                i += 1;
            }
        }
    }

    let mut seg_start = i;
    let mut j = i;
    while j < end {
        if matches!(chars[j], '.' | '?' | '!') {
            let mut k = j + 1;
            while k < end && chars[k].is_whitespace() {
                k += 1;
            }
            if k > j + 1 && k < end && chars[k].is_uppercase() {
                push_segment(chars, seg_start, j + 1, out);
                seg_start = k;
                j = k;
                continue;
            }
        }
        j += 1;
    }
    push_segment(chars, seg_start, end, out);
}

fn push_segment(chars: &[char], start: usize, end: usize, out: &mut Vec<Span>) {
    let mut s = start;
    let mut e = end;
    while s < e && chars[s].is_whitespace() {
        s += 1;
    }
    while e > s && chars[e - 1].is_whitespace() {
        e -= 1;
    }
    if s < e && chars[s..e].iter().any(|c| c.is_alphabetic()) {
        out.push(Span { start: s, end: e });
    }
}
