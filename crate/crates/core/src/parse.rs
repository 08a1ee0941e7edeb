//! Line-oriented tokenising shared by every text format.

use thiserror::Error;

/// A syntax error pinned to a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    /// 1-based character column.
    pub column: usize,
}

/// A non-blank line with comments stripped.
#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub number: usize,
    pub raw: &'a str,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, column, message)
    }

    pub fn error_at(&self, token: &Token<'_>, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, token.column, message)
    }

    /// Column just past the last character, for "missing token" errors.
    pub fn end_column(&self) -> usize {
        self.raw.chars().count() + 1
    }

    /// Everything after the first token, with its starting column.
    pub fn rest_after_keyword(&self) -> (&'a str, usize) {
        let Some(first) = self.tokens.first() else { return ("", 1) };
        let start_byte = byte_offset(self.raw, first.column) + first.text.len();
        let rest = &self.raw[start_byte..];
        let trimmed = rest.trim_start();
        let skipped = rest.len() - trimmed.len();
        let col = self.raw[..start_byte + skipped].chars().count() + 1;
        (trimmed, col)
    }
}

fn byte_offset(s: &str, column: usize) -> usize {
    s.char_indices().nth(column - 1).map(|(b, _)| b).unwrap_or(s.len())
}

/// Splits `text` into whitespace-separated tokens per line, dropping `#`
/// comments and blank lines.
pub fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (idx, full) in text.lines().enumerate() {
        let raw = match full.find('#') {
            Some(pos) => &full[..pos],
            None => full,
        };
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        for (col0, (byte, ch)) in raw.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((b, c)) = start.take() {
                    tokens.push(Token { text: &raw[b..byte], column: c + 1 });
                }
            } else if start.is_none() {
                start = Some((byte, col0));
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token { text: &raw[b..], column: c + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: idx + 1, raw, tokens });
        }
    }
    out
}
