use crate::array::{SensorArray, MAX_APERTURE, MAX_SENSORS};

use super::{looks_fractional, Cursor, ParseError, ParseErrorKind};

fn is_separator(c: char) -> bool {
    c.is_whitespace() || matches!(c, ',' | '[' | ']')
}

/// Parses a list of integer sensor positions.
///
/// Integers are separated by commas and/or whitespace and may be wrapped in
/// one pair of square brackets. Negative values are allowed and order does
/// not matter; the result is sorted.
///
/// ```
/// use coarray_core::parse_positions;
/// let a = parse_positions("[0 6, 1 4]").unwrap();
/// assert_eq!(a.positions(), &[0, 1, 4, 6]);
/// ```
pub fn parse_positions(text: &str) -> Result<SensorArray, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Err(ParseError::new(
            ParseErrorKind::EmptyInput,
            0,
            "no sensor positions given",
        ));
    }
    let bracketed = cur.eat('[');
    let mut values: Vec<(i64, usize)> = Vec::new();
    let mut need_value = false;

    loop {
        cur.skip_ws();
        match cur.peek() {
            None => {
                if bracketed {
                    return Err(ParseError::new(
                        ParseErrorKind::BadToken,
                        cur.len(),
                        "missing closing ']'",
                    ));
                }
                if need_value {
                    return Err(trailing_comma(&cur));
                }
                break;
            }
            Some(']') if bracketed => {
                if need_value {
                    return Err(trailing_comma(&cur));
                }
                cur.bump();
                cur.skip_ws();
                if !cur.at_end() {
                    return Err(ParseError::new(
                        ParseErrorKind::BadToken,
                        cur.pos,
                        "unexpected text after ']'",
                    ));
                }
                break;
            }
            Some(',') => {
                if need_value || values.is_empty() {
                    return Err(ParseError::new(
                        ParseErrorKind::BadToken,
                        cur.pos,
                        "expected a position before ','",
                    ));
                }
                cur.bump();
                need_value = true;
            }
            Some(c @ ('[' | ']')) => {
                return Err(ParseError::new(
                    ParseErrorKind::BadToken,
                    cur.pos,
                    format!("unexpected '{c}'"),
                ));
            }
            Some(_) => {
                let start = cur.pos;
                let token = cur.take_while(|c| !is_separator(c));
                values.push((integer_token(&token, start)?, start));
                need_value = false;
            }
        }
    }

    if values.is_empty() {
        return Err(ParseError::new(
            ParseErrorKind::EmptyInput,
            0,
            "no sensor positions given",
        ));
    }
    build(values)
}

fn trailing_comma(cur: &Cursor) -> ParseError {
    ParseError::new(
        ParseErrorKind::BadToken,
        cur.pos.min(cur.len()),
        "expected a position after ','",
    )
}

fn integer_token(token: &str, start: usize) -> Result<i64, ParseError> {
    if let Ok(v) = token.parse::<i64>() {
        return Ok(v);
    }
    let digits = token.strip_prefix(['+', '-']).unwrap_or(token);
    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(ParseError::new(
            ParseErrorKind::ResourceLimit,
            start,
            format!("'{token}' is out of range"),
        ));
    }
    if looks_fractional(token) {
        return Err(ParseError::new(
            ParseErrorKind::NonInteger,
            start,
            format!("'{token}' is not an integer; positions are whole half-wavelengths"),
        ));
    }
    Err(ParseError::new(
        ParseErrorKind::BadToken,
        start,
        format!("'{token}' is not a number"),
    ))
}

fn build(values: Vec<(i64, usize)>) -> Result<SensorArray, ParseError> {
    if values.len() > MAX_SENSORS {
        return Err(ParseError::new(
            ParseErrorKind::ResourceLimit,
            values[MAX_SENSORS].1,
            format!("more than {MAX_SENSORS} sensors"),
        ));
    }

    let mut sorted = values.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        let later = w[0].1.max(w[1].1);
        return Err(ParseError::new(
            ParseErrorKind::DuplicatePosition,
            later,
            format!("position {} appears more than once", w[0].0),
        ));
    }

    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let aperture = i128::from(hi.0) - i128::from(lo.0);
    if aperture > i128::from(MAX_APERTURE) {
        return Err(ParseError::new(
            ParseErrorKind::ResourceLimit,
            lo.1.max(hi.1),
            format!("aperture {aperture} exceeds the limit of {MAX_APERTURE}"),
        ));
    }

    SensorArray::new(values.into_iter().map(|(v, _)| v).collect())
        .map_err(|e| ParseError::from_array_error(e, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind_at(text: &str) -> (ParseErrorKind, usize) {
        let e = parse_positions(text).unwrap_err();
        (e.kind, e.position)
    }

    #[test]
    fn comma_list() {
        assert_eq!(parse_positions("0, 1, 4, 6").unwrap().positions(), &[0, 1, 4, 6]);
    }

    #[test]
    fn bracketed_with_negatives() {
        let a = parse_positions("[-7 -4 0 5 10 15 20 25 28 31]").unwrap();
        assert_eq!(a.min(), -7);
        assert_eq!(a.max(), 31);
        assert_eq!(a.len(), 10);
    }

    #[test]
    fn unsorted_input_is_sorted() {
        assert_eq!(parse_positions("0 6 1 4").unwrap().positions(), &[0, 1, 4, 6]);
        assert_eq!(parse_positions("  6,0 ,\t1\n4 ").unwrap().positions(), &[0, 1, 4, 6]);
    }

    #[test]
    fn single_value() {
        assert_eq!(parse_positions("0").unwrap().positions(), &[0]);
        assert_eq!(parse_positions("[+5]").unwrap().positions(), &[5]);
    }

    #[test]
    fn duplicate_points_at_second_occurrence() {
        assert_eq!(kind_at("0, 0, 1"), (ParseErrorKind::DuplicatePosition, 3));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(kind_at(""), (ParseErrorKind::EmptyInput, 0));
        assert_eq!(kind_at("   "), (ParseErrorKind::EmptyInput, 0));
        assert_eq!(kind_at("[ ]"), (ParseErrorKind::EmptyInput, 0));
    }

    #[test]
    fn bad_tokens() {
        assert_eq!(kind_at("abc"), (ParseErrorKind::BadToken, 0));
        assert_eq!(kind_at("0, x1"), (ParseErrorKind::BadToken, 3));
        assert_eq!(kind_at("0,,1"), (ParseErrorKind::BadToken, 2));
        assert_eq!(kind_at("0, 1,"), (ParseErrorKind::BadToken, 5));
        assert_eq!(kind_at(", 1"), (ParseErrorKind::BadToken, 0));
        assert_eq!(kind_at("[0 1"), (ParseErrorKind::BadToken, 4));
        assert_eq!(kind_at("[0 1] 2"), (ParseErrorKind::BadToken, 6));
        assert_eq!(kind_at("0 1]"), (ParseErrorKind::BadToken, 3));
        assert_eq!(kind_at("nan"), (ParseErrorKind::BadToken, 0));
    }

    #[test]
    fn non_integers() {
        assert_eq!(kind_at("1.5, 2"), (ParseErrorKind::NonInteger, 0));
        assert_eq!(kind_at("0 2e1"), (ParseErrorKind::NonInteger, 2));
    }

    #[test]
    fn limits() {
        assert_eq!(kind_at("0 1000001"), (ParseErrorKind::ResourceLimit, 2));
        assert_eq!(
            kind_at("0 99999999999999999999999"),
            (ParseErrorKind::ResourceLimit, 2)
        );
        let many: Vec<String> = (0..=MAX_SENSORS).map(|i| i.to_string()).collect();
        let text = many.join(" ");
        let e = parse_positions(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ResourceLimit);
        assert!(e.position < text.chars().count());
    }

    #[test]
    fn offsets_count_characters() {
        // 'µ' is two bytes but one character
        assert_eq!(kind_at("µ"), (ParseErrorKind::BadToken, 0));
        assert_eq!(kind_at("0 1 µ"), (ParseErrorKind::BadToken, 4));
        assert_eq!(kind_at("\u{3000}1 1"), (ParseErrorKind::DuplicatePosition, 3));
    }
}
