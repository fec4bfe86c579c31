//! Text input: explicit position lists and inter-element spacing (IES)
//! expressions.
//!
//! Both grammars are closed; nothing is evaluated beyond what is listed in
//! [`parse_positions`] and [`parse_ies`]. Error offsets count characters, not
//! bytes, from the start of the input.

mod ies;
mod positions;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::array::{ArrayError, SensorArray};

pub use ies::{ies_to_positions, parse_ies, parse_ies_array, IesError, IesSpec, IesTerm};
pub use positions::parse_positions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    EmptyInput,
    BadToken,
    NonInteger,
    DuplicatePosition,
    ZeroSpacing,
    ResourceLimit,
}

impl ParseErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::EmptyInput => "empty-input",
            ParseErrorKind::BadToken => "bad-token",
            ParseErrorKind::NonInteger => "non-integer",
            ParseErrorKind::DuplicatePosition => "duplicate-position",
            ParseErrorKind::ZeroSpacing => "zero-spacing",
            ParseErrorKind::ResourceLimit => "resource-limit",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{kind} at offset {position}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            kind,
            position,
            message: message.into(),
        }
    }

    pub(crate) fn from_array_error(err: ArrayError, position: usize) -> Self {
        let kind = match err {
            ArrayError::Empty => ParseErrorKind::EmptyInput,
            ArrayError::DuplicatePosition(_) => ParseErrorKind::DuplicatePosition,
            ArrayError::ApertureLimit { .. } | ArrayError::SensorLimit { .. } => {
                ParseErrorKind::ResourceLimit
            }
        };
        ParseError::new(kind, position, err.to_string())
    }
}

/// Which grammar a piece of input text follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    Positions,
    Ies,
    CatalogId,
}

/// Parses `text` as positions or IES. Catalog ids need a catalog; see
/// [`crate::Catalog::resolve`].
pub fn parse_array(format: InputFormat, text: &str) -> Option<Result<SensorArray, ParseError>> {
    match format {
        InputFormat::Positions => Some(parse_positions(text)),
        InputFormat::Ies => Some(parse_ies_array(text)),
        InputFormat::CatalogId => None,
    }
}

/// Character cursor shared by both parsers.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn len(&self) -> usize {
        self.chars.len()
    }

    /// Consumes characters while `pred` holds and returns them.
    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn starts_with(&self, word: &str) -> bool {
        (self.pos..)
            .zip(word.chars())
            .all(|(i, c)| self.chars.get(i) == Some(&c))
    }
}

/// True for tokens that read as a decimal or exponent number but not as an
/// integer, e.g. `1.5`, `.5`, `2e3`.
fn looks_fractional(token: &str) -> bool {
    let body = token.strip_prefix(['+', '-']).unwrap_or(token);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let mantissa_ok = {
        let mut parts = mantissa.splitn(2, '.');
        let int = parts.next().unwrap_or("");
        let frac = parts.next();
        let digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        digits(int)
            && frac.is_none_or(digits)
            && (!int.is_empty() || frac.is_some_and(|f| !f.is_empty()))
            && (frac.is_some() || exponent.is_some())
    };
    let exponent_ok = exponent.is_none_or(|e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
    });
    mantissa_ok && exponent_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractional_detection() {
        for t in ["1.5", "-0.25", ".5", "2.", "1e3", "1.5E-2", "+3.0"] {
            assert!(looks_fractional(t), "{t}");
        }
        for t in ["12", "abc", "1.2.3", "e5", "1e", ".", "1x"] {
            assert!(!looks_fractional(t), "{t}");
        }
    }

    #[test]
    fn kind_codes_match_serde() {
        for kind in [
            ParseErrorKind::EmptyInput,
            ParseErrorKind::BadToken,
            ParseErrorKind::NonInteger,
            ParseErrorKind::DuplicatePosition,
            ParseErrorKind::ZeroSpacing,
            ParseErrorKind::ResourceLimit,
        ] {
            assert_eq!(
                serde_json::to_string(&kind).unwrap(),
                format!("\"{}\"", kind.code())
            );
        }
    }
}
