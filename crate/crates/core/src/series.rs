//! Truncated noncommutative power series in indeterminates `x_a`, the
//! Magnus embedding `a -> 1 + x_a`, and the bi-order it induces on F.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::Element;
use crate::scalar::{self, Scalar};
use crate::words::{generator_name, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation degrees differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
}

/// A word in the indeterminates, ordered by length and then
/// lexicographically with `x_a < x_b < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<usize>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let run = self.0[i..].iter().take_while(|&&h| h == g).count();
            if !first {
                write!(f, "*")?;
            }
            write!(f, "x_{}", generator_name(g))?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

/// Series with every monomial of degree at most `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(n: usize) -> Self {
        TruncatedSeries { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut s = TruncatedSeries::zero(n);
        s.add_term(Monomial::default(), Scalar::one());
        s
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * m`, dropping it if `m` exceeds the truncation.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if m.degree() > self.n || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn letter(l: Letter, n: usize) -> Self {
        let mut s = TruncatedSeries::one(n);
        let g = l.generator();
        if l.is_inverse() {
            // (1 + x)^-1 = sum (-x)^i
            for i in 1..=n {
                let c = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                s.add_term(Monomial(vec![g; i]), c);
            }
        } else {
            s.add_term(Monomial(vec![g]), Scalar::one());
        }
        s
    }

    /// Truncated product; both factors must share the truncation degree.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.n != other.n {
            return Err(SeriesError::TruncationMismatch(self.n, other.n));
        }
        let mut out = TruncatedSeries::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > self.n {
                    continue;
                }
                let mut m = m1.0.clone();
                m.extend_from_slice(&m2.0);
                out.add_term(Monomial(m), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.n != other.n {
            return Err(SeriesError::TruncationMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Lowest nonzero term in degree-then-lex order.
    pub fn lowest_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{}", scalar::format(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", scalar::format(&abs))?;
            }
        }
        Ok(())
    }
}

pub fn series_mul(s: &TruncatedSeries, t: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    s.mul(t)
}

pub fn embed_word(w: &Word, n: usize) -> TruncatedSeries {
    w.letters().iter().fold(TruncatedSeries::one(n), |acc, &l| {
        acc.mul(&TruncatedSeries::letter(l, n)).expect("same truncation")
    })
}

/// Linear extension of the Magnus embedding, truncated at degree `n`.
pub fn embed(u: &Element, n: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(n);
    for (w, c) in u.terms() {
        for (m, d) in embed_word(w, n).terms {
            out.add_term(m, c * d);
        }
    }
    out
}

/// Bi-order on F pulled back from the embedding: the sign of the first
/// nonzero coefficient of `embed(w1) - embed(w2)` in degree-then-lex order.
///
/// Degrees are examined in increasing truncation, which settles the answer
/// at the first degree where the images differ; the cap `|w1| + |w2|`
/// always suffices.
pub fn bi_order_compare(w1: &Word, w2: &Word) -> Ordering {
    if w1 == w2 {
        return Ordering::Equal;
    }
    let cap = w1.len() + w2.len();
    for n in 1..=cap {
        let diff = embed_word(w1, n).sub(&embed_word(w2, n)).expect("same truncation");
        if let Some((_, c)) = diff.lowest_term() {
            return if c.is_positive() { Ordering::Greater } else { Ordering::Less };
        }
    }
    unreachable!("distinct words have distinct embeddings below the cap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_word};
    use crate::scalar::int;

    fn w(s: &str) -> Word {
        parse_word(s, 2).unwrap()
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed_word(&w("a"), 3).to_string(), "1 + x_a");
        assert_eq!(embed_word(&w("A"), 2).to_string(), "1 - x_a + x_a^2");
        let u = parse_element("ab - ba", 2).unwrap();
        assert_eq!(embed(&u, 2).to_string(), "x_a*x_b - x_b*x_a");
    }

    #[test]
    fn products() {
        let p = series_mul(&embed_word(&w("a"), 2), &embed_word(&w("A"), 2)).unwrap();
        assert_eq!(p, TruncatedSeries::one(2));
        let s = embed_word(&w("ab"), 3);
        assert_eq!(series_mul(&s, &TruncatedSeries::one(3)).unwrap(), s);
        let xa = embed(&parse_element("a - 1", 2).unwrap(), 1);
        let xb = embed(&parse_element("b - 1", 2).unwrap(), 1);
        assert!(series_mul(&xa, &xb).unwrap().is_zero());
        assert_eq!(
            series_mul(&xa, &TruncatedSeries::one(2)),
            Err(SeriesError::TruncationMismatch(1, 2))
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(bi_order_compare(&Word::identity(), &w("a")), Ordering::Less);
        assert_eq!(bi_order_compare(&w("ab"), &w("ba")), Ordering::Greater);
        assert_eq!(bi_order_compare(&w("abA"), &w("abA")), Ordering::Equal);
        assert_eq!(bi_order_compare(&w("A"), &Word::identity()), Ordering::Less);
    }

    #[test]
    fn monomial_order_is_degree_first() {
        let m = |v: &[usize]| Monomial(v.to_vec());
        assert!(m(&[1]) < m(&[0, 0]));
        assert!(m(&[0, 1]) < m(&[1, 0]));
        assert_eq!(int(1), embed_word(&w("ab"), 2).coefficient(&m(&[0, 1])));
    }
}
