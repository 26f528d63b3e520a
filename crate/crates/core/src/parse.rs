//! Text syntax for words and algebra elements.
//!
//! ```text
//! element := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'] factor)*
//! factor  := atom ['^' integer]
//! atom    := integer ['/' integer] | letter | '(' element ')'
//! ```
//!
//! Lowercase letters are generators, uppercase letters their inverses, and
//! `1` is the identity. Whitespace is ignored between tokens.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::Element;
use crate::scalar::Scalar;
use crate::words::{Letter, Word, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator '{name}' at offset {offset} for rank {rank}")]
    UnknownGenerator { offset: usize, name: char, rank: usize },
    #[error("negative power of a non-unit at offset {offset}")]
    NonUnitPower { offset: usize },
    #[error("expected a single group element, got {0}")]
    NotAWord(String),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.pos, message: message.into() })
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        let mut acc = Element::zero();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn starts_factor(c: u8) -> bool {
        c.is_ascii_alphanumeric() || c == b'('
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if Self::starts_factor(c) => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let start = self.pos;
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = self.exponent()?;
        base.pow_signed(n).ok_or(ParseError::NonUnitPower { offset: start })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected integer exponent");
        }
        let n: i64 = match digits.parse() {
            Ok(n) if n <= 1_000 => n,
            _ => return self.error("exponent too large"),
        };
        Ok(if negative { -n } else { n })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        match self.peek() {
            None => self.error("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.element()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut value = Scalar::from_integer(num);
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits();
                    if den.is_empty() {
                        return self.error("expected denominator");
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        self.pos = save;
                        return self.error("zero denominator");
                    }
                    value /= Scalar::from_integer(den);
                }
                Ok(Element::scalar(value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let offset = self.pos;
                self.pos += 1;
                let g = (c.to_ascii_lowercase() - b'a') as usize;
                if g >= self.rank {
                    return Err(ParseError::UnknownGenerator {
                        offset,
                        name: c as char,
                        rank: self.rank,
                    });
                }
                Ok(Element::word(Word::letter(Letter::new(g, c.is_ascii_uppercase()))))
            }
            Some(c) => self.error(format!("unexpected character '{}'", c as char)),
        }
    }
}

/// Parses an algebra element over an alphabet of the given rank.
pub fn parse_element(text: &str, rank: usize) -> Result<Element, ParseError> {
    let rank = rank.min(MAX_RANK);
    let mut p = Parser { src: text.as_bytes(), pos: 0, rank };
    let e = p.element()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(e)
}

/// Parses a single group element such as `aB^2` or `(ab)^-1`.
pub fn parse_word(text: &str, rank: usize) -> Result<Word, ParseError> {
    let e = parse_element(text, rank)?;
    match e.as_monomial() {
        Some((w, c)) if c.is_one() => Ok(w.clone()),
        _ => Err(ParseError::NotAWord(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn spec_examples() {
        let e = parse_element("a*B + 3/2", 2).unwrap();
        let expected = Element::from_terms([
            (Word::identity(), ratio(3, 2)),
            (Word::from_letters([Letter::pos(0), Letter::neg(1)]), Scalar::one()),
        ]);
        assert_eq!(e, expected);

        let sq = parse_element("(a+b)^2", 2).unwrap();
        assert_eq!(sq, parse_element("a^2 + ab + ba + b^2", 2).unwrap());

        assert_eq!(
            parse_element("a^", 2),
            Err(ParseError::Syntax { offset: 2, message: "expected integer exponent".into() })
        );
    }

    #[test]
    fn word_syntax() {
        let w = parse_word("aB^2", 2).unwrap();
        assert_eq!(w, Word::from_letters([Letter::pos(0), Letter::neg(1), Letter::neg(1)]));
        assert_eq!(parse_word("a^-1b", 2).unwrap(), parse_word("Ab", 2).unwrap());
        assert_eq!(parse_word("1", 2).unwrap(), Word::identity());
        assert_eq!(parse_word("(ab)^-1", 2).unwrap(), parse_word("BA", 2).unwrap());
        assert!(matches!(parse_word("a+b", 2), Err(ParseError::NotAWord(_))));
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_element("a + c", 2),
            Err(ParseError::UnknownGenerator { offset: 4, name: 'c', rank: 2 })
        );
        assert!(matches!(parse_element("(a+b)^-1", 2), Err(ParseError::NonUnitPower { .. })));
        assert!(matches!(parse_element("(a", 2), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_element("1/0", 2), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_element("", 2), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_element("a)", 2), Err(ParseError::Syntax { offset: 1, .. })));
    }

    #[test]
    fn whitespace_and_signs() {
        let e = parse_element("  - a  -  2 / 3 * b ", 2).unwrap();
        assert_eq!(e.to_string(), "-a - 2/3*b");
        assert_eq!(parse_element("+a", 2).unwrap().to_string(), "a");
        assert_eq!(parse_element("2^3", 2).unwrap().to_string(), "8");
    }
}
