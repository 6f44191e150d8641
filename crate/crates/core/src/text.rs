//! Shared helpers for the line-oriented text formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

/// A parse failure pinned to a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
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

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// A non-blank, comment-stripped line.
#[derive(Clone, Debug)]
pub struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    pub fn tokens(&self) -> Vec<Token<'a>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push(Token { text: &self.text[s..i], column: s + 1 });
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push(Token { text: &self.text[s..], column: s + 1 });
        }
        out
    }

    pub fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, column, message)
    }
}

/// Yields lines with `#` comments removed, skipping blank ones.
pub fn content_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let text = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let text = text.trim_end();
        if text.trim().is_empty() {
            None
        } else {
            Some(Line { number: i + 1, text })
        }
    })
}

/// Parses `p` or `p/q` (optionally signed) into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| format!("malformed rational `{s}`"))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("malformed rational `{s}`"))?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_rational_token(line: &Line<'_>, tok: Token<'_>) -> Result<BigRational, ParseError> {
    parse_rational(tok.text).map_err(|m| line.error(tok.column, m))
}

pub fn parse_int_token<T: std::str::FromStr>(line: &Line<'_>, tok: Token<'_>) -> Result<T, ParseError> {
    tok.text.parse().map_err(|_| line.error(tok.column, format!("expected an integer, found `{}`", tok.text)))
}

/// Ordered `key = value` document used for all machine-readable reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KvDocument {
    entries: Vec<(String, String)>,
}

impl KvDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut doc = KvDocument::new();
        for line in content_lines(input) {
            let (k, v) = line.text.split_once('=').ok_or_else(|| line.error(1, "expected `key = value`"))?;
            doc.push(k.trim(), v.trim());
        }
        Ok(doc)
    }
}

impl fmt::Display for KvDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
