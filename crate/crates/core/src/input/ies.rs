use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::array::{ArrayError, SensorArray, MAX_APERTURE, MAX_SENSORS};

use super::{looks_fractional, Cursor, ParseError, ParseErrorKind};

/// One run of equal spacings: `spacing` repeated `repeat` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IesTerm {
    pub spacing: u64,
    pub repeat: u64,
}

impl IesTerm {
    pub fn new(spacing: u64, repeat: u64) -> Self {
        IesTerm { spacing, repeat }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IesError {
    #[error("an IES expression needs at least one spacing")]
    Empty,
    #[error("term {index}: spacing must be at least 1")]
    ZeroSpacing { index: usize },
    #[error("term {index}: repeat count must be at least 1")]
    ZeroRepeat { index: usize },
}

/// An array described by its consecutive inter-element spacings.
///
/// Terms keep the order they were written in; adjacent runs of the same
/// spacing are not merged unless [`IesSpec::canonical`] is asked for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IesSpec {
    terms: Vec<IesTerm>,
}

impl IesSpec {
    pub fn new(terms: Vec<IesTerm>) -> Result<Self, IesError> {
        if terms.is_empty() {
            return Err(IesError::Empty);
        }
        for (index, t) in terms.iter().enumerate() {
            if t.spacing == 0 {
                return Err(IesError::ZeroSpacing { index });
            }
            if t.repeat == 0 {
                return Err(IesError::ZeroRepeat { index });
            }
        }
        Ok(IesSpec { terms })
    }

    /// Run-length encodes the gaps of an array. `None` for a single sensor,
    /// which has no gaps to describe.
    pub fn from_array(array: &SensorArray) -> Option<Self> {
        let mut terms: Vec<IesTerm> = Vec::new();
        for gap in array.spacings() {
            match terms.last_mut() {
                Some(t) if t.spacing == gap => t.repeat += 1,
                _ => terms.push(IesTerm::new(gap, 1)),
            }
        }
        (!terms.is_empty()).then_some(IesSpec { terms })
    }

    pub fn terms(&self) -> &[IesTerm] {
        &self.terms
    }

    /// Number of spacings after expansion, Σ repeats (saturating).
    pub fn spacing_count(&self) -> u64 {
        self.terms
            .iter()
            .fold(0u64, |acc, t| acc.saturating_add(t.repeat))
    }

    /// Expanded spacing list. Callers should check sizes first;
    /// [`ies_to_positions`] does.
    pub fn expand(&self) -> Vec<u64> {
        self.terms
            .iter()
            .flat_map(|t| std::iter::repeat_n(t.spacing, t.repeat as usize))
            .collect()
    }

    /// Same spacing sequence with adjacent equal-spacing terms merged.
    pub fn canonical(&self) -> IesSpec {
        let mut terms: Vec<IesTerm> = Vec::new();
        for t in &self.terms {
            match terms.last_mut() {
                Some(last) if last.spacing == t.spacing => last.repeat += t.repeat,
                _ => terms.push(*t),
            }
        }
        IesSpec { terms }
    }

    /// Renders in the `k*ones(1,r)` form, e.g. `ones(1,17) 3*ones(1,18)`.
    pub fn to_ones_notation(&self) -> String {
        self.terms
            .iter()
            .map(|t| match t.spacing {
                1 => format!("ones(1,{})", t.repeat),
                k => format!("{k}*ones(1,{})", t.repeat),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Exponent form, e.g. `1^17, 3^18, 2^2, 1^2`; a single repeat prints as the
/// bare spacing.
impl fmt::Display for IesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if t.repeat == 1 {
                write!(f, "{}", t.spacing)?;
            } else {
                write!(f, "{}^{}", t.spacing, t.repeat)?;
            }
        }
        Ok(())
    }
}

impl FromStr for IesSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ies(s)
    }
}

impl Serialize for IesSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IesSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_ies(&text).map_err(serde::de::Error::custom)
    }
}

/// Sensor positions from an IES spec: first sensor at 0, each next one at the
/// running sum of the expanded spacings.
pub fn ies_to_positions(spec: &IesSpec) -> Result<SensorArray, ArrayError> {
    check_size(spec.terms())?;
    let mut positions = Vec::with_capacity(spec.spacing_count() as usize + 1);
    let mut at = 0i64;
    positions.push(at);
    for gap in spec.expand() {
        at += gap as i64;
        positions.push(at);
    }
    SensorArray::new(positions)
}

/// Index of the first term at which the expanded array crosses a limit.
fn first_oversized_term(terms: &[IesTerm]) -> Option<(usize, ArrayError)> {
    let mut sensors: u128 = 1;
    let mut aperture: u128 = 0;
    for (i, t) in terms.iter().enumerate() {
        sensors += u128::from(t.repeat);
        aperture += u128::from(t.spacing) * u128::from(t.repeat);
        if sensors > MAX_SENSORS as u128 {
            let count = usize::try_from(sensors).unwrap_or(usize::MAX);
            return Some((i, ArrayError::SensorLimit { count }));
        }
        if aperture > u128::from(MAX_APERTURE) {
            return Some((i, ArrayError::ApertureLimit { aperture }));
        }
    }
    None
}

fn check_size(terms: &[IesTerm]) -> Result<(), ArrayError> {
    match first_oversized_term(terms) {
        Some((_, e)) => Err(e),
        None => Ok(()),
    }
}

/// Parses an IES expression.
///
/// Terms are separated by commas and/or whitespace; the whole list may be
/// wrapped in `[...]` or `{...}`. Each term is one of
///
/// * `k`: a single spacing `k`
/// * `k^r`: spacing `k` repeated `r` times
/// * `k*ones(1,r)`: same as `k^r`
/// * `ones(1,r)`: spacing 1 repeated `r` times
///
/// Whitespace is allowed inside a term, so `2*ones (1, 7)` parses.
pub fn parse_ies(text: &str) -> Result<IesSpec, ParseError> {
    parse_terms(text).map(|terms| IesSpec {
        terms: terms.into_iter().map(|(t, _)| t).collect(),
    })
}

/// [`parse_ies`] followed by [`ies_to_positions`], with size limits reported
/// at the offending term.
pub fn parse_ies_array(text: &str) -> Result<SensorArray, ParseError> {
    let located = parse_terms(text)?;
    let terms: Vec<IesTerm> = located.iter().map(|(t, _)| *t).collect();
    if let Some((i, e)) = first_oversized_term(&terms) {
        return Err(ParseError::from_array_error(e, located[i].1));
    }
    ies_to_positions(&IesSpec { terms }).map_err(|e| ParseError::from_array_error(e, 0))
}

fn parse_terms(text: &str) -> Result<Vec<(IesTerm, usize)>, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Err(ParseError::new(
            ParseErrorKind::EmptyInput,
            0,
            "no spacings given",
        ));
    }
    let closer = if cur.eat('[') {
        Some(']')
    } else if cur.eat('{') {
        Some('}')
    } else {
        None
    };

    let mut terms = Vec::new();
    let mut need_term = false;
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => {
                if let Some(c) = closer {
                    return Err(bad(cur.len(), format!("missing closing '{c}'")));
                }
                if need_term {
                    return Err(bad(cur.len(), "expected a spacing after ','"));
                }
                break;
            }
            Some(c) if Some(c) == closer => {
                if need_term {
                    return Err(bad(cur.pos, "expected a spacing after ','"));
                }
                cur.bump();
                cur.skip_ws();
                if !cur.at_end() {
                    return Err(bad(cur.pos, format!("unexpected text after '{c}'")));
                }
                break;
            }
            Some(',') => {
                if need_term || terms.is_empty() {
                    return Err(bad(cur.pos, "expected a spacing before ','"));
                }
                cur.bump();
                need_term = true;
            }
            Some(_) => {
                let start = cur.pos;
                terms.push((term(&mut cur)?, start));
                need_term = false;
            }
        }
    }

    if terms.is_empty() {
        return Err(ParseError::new(
            ParseErrorKind::EmptyInput,
            0,
            "no spacings given",
        ));
    }
    Ok(terms)
}

fn bad(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::BadToken, position, message)
}

fn term(cur: &mut Cursor) -> Result<IesTerm, ParseError> {
    if cur.starts_with("ones") {
        let repeat = ones(cur)?;
        return Ok(IesTerm::new(1, repeat));
    }
    let spacing = count(cur, "spacing")?;
    // look past whitespace for '^' or '*' without committing to it
    let save = cur.pos;
    cur.skip_ws();
    let repeat = if cur.eat('^') {
        cur.skip_ws();
        count(cur, "repeat count")?
    } else if cur.eat('*') {
        cur.skip_ws();
        if !cur.starts_with("ones") {
            return Err(bad(cur.pos, "expected 'ones(1,r)' after '*'"));
        }
        ones(cur)?
    } else {
        cur.pos = save;
        1
    };
    Ok(IesTerm::new(spacing, repeat))
}

/// `ones ( 1 , r )` → r
fn ones(cur: &mut Cursor) -> Result<u64, ParseError> {
    cur.pos += "ones".len();
    cur.skip_ws();
    if !cur.eat('(') {
        return Err(bad(cur.pos, "expected '(' after 'ones'"));
    }
    cur.skip_ws();
    let rows_at = cur.pos;
    let rows = cur.take_while(|c| c.is_ascii_digit());
    if rows != "1" {
        return Err(bad(rows_at, "only row vectors 'ones(1,r)' are supported"));
    }
    cur.skip_ws();
    if !cur.eat(',') {
        return Err(bad(cur.pos, "expected ',' in 'ones(1,r)'"));
    }
    cur.skip_ws();
    let repeat = count(cur, "repeat count")?;
    cur.skip_ws();
    if !cur.eat(')') {
        return Err(bad(cur.pos, "expected ')' to close 'ones(1,r)'"));
    }
    Ok(repeat)
}

/// A positive integer literal.
fn count(cur: &mut Cursor, what: &str) -> Result<u64, ParseError> {
    let start = cur.pos;
    let token = cur.take_while(|c| {
        c.is_ascii_alphanumeric() || matches!(c, '.' | '+' | '-') || (!c.is_ascii() && !c.is_whitespace())
    });
    if token.is_empty() {
        let shown = cur.peek().map_or("end of input".to_string(), |c| format!("'{c}'"));
        return Err(bad(start, format!("expected a {what}, found {shown}")));
    }
    if token.chars().all(|c| c.is_ascii_digit()) {
        return match token.parse::<u64>() {
            Ok(0) => Err(ParseError::new(
                ParseErrorKind::ZeroSpacing,
                start,
                format!("{what} must be at least 1"),
            )),
            Ok(v) => Ok(v),
            Err(_) => Err(ParseError::new(
                ParseErrorKind::ResourceLimit,
                start,
                format!("{what} '{token}' is out of range"),
            )),
        };
    }
    if let Ok(v) = token.parse::<i64>() {
        // signed literal: "-2", "+3"
        return if v >= 1 {
            Ok(v as u64)
        } else {
            Err(ParseError::new(
                ParseErrorKind::ZeroSpacing,
                start,
                format!("{what} must be at least 1, got {v}"),
            ))
        };
    }
    if looks_fractional(&token) {
        return Err(ParseError::new(
            ParseErrorKind::NonInteger,
            start,
            format!("{what} '{token}' is not an integer"),
        ));
    }
    Err(bad(start, format!("'{token}' is not a valid {what}")))
}
