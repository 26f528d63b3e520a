//! Gradings of Q[F] induced by homomorphisms `h: F -> (Q, +)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::Element;
use crate::scalar::{self, Scalar};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("the zero element has no leading component")]
    ZeroElement,
    #[error("weighting has {got} weights, alphabet rank is {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("malformed weight list: {0}")]
    BadWeights(String),
}

/// One rational weight per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weighting {
    weights: Vec<Scalar>,
}

/// `h`-degree of an element: a rational, or `-inf` for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(Scalar),
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl Degree {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{}", scalar::format(d)),
        }
    }
}

impl Weighting {
    pub fn new(weights: Vec<Scalar>) -> Self {
        Weighting { weights }
    }

    pub fn from_ints(weights: &[i64]) -> Self {
        Weighting { weights: weights.iter().map(|&w| scalar::int(w)).collect() }
    }

    /// Parses `w1,w2,...` with each weight `p` or `p/q`.
    pub fn parse(text: &str) -> Result<Self, GradingError> {
        text.split(',')
            .map(|t| scalar::parse(t).ok_or_else(|| GradingError::BadWeights(text.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(Weighting::new)
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), GradingError> {
        if self.weights.len() != rank {
            return Err(GradingError::RankMismatch { got: self.weights.len(), rank });
        }
        Ok(())
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Weight of generator `g`; generators beyond the list weigh zero.
    pub fn weight(&self, g: usize) -> Scalar {
        self.weights.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `max |h(a)|` over the generators.
    pub fn max_abs_weight(&self) -> Scalar {
        self.weights.iter().map(|w| w.abs()).max().unwrap_or_else(Scalar::zero)
    }

    pub fn negate(&self) -> Weighting {
        Weighting { weights: self.weights.iter().map(|w| -w).collect() }
    }

    pub fn word_degree(&self, w: &Word) -> Scalar {
        let mut d = Scalar::zero();
        for l in w.letters() {
            let x = self.weight(l.generator());
            if l.is_inverse() {
                d -= x;
            } else {
                d += x;
            }
        }
        d
    }

    /// Degrees of every prefix of `w`, from the identity up to `w` itself.
    pub fn prefix_degrees(&self, w: &Word) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut d = Scalar::zero();
        out.push(d.clone());
        for l in w.letters() {
            let x = self.weight(l.generator());
            if l.is_inverse() {
                d -= x;
            } else {
                d += x;
            }
            out.push(d.clone());
        }
        out
    }

    pub fn degree(&self, u: &Element) -> Degree {
        u.support()
            .map(|w| self.word_degree(w))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Lowest degree over the support, `None` for zero.
    pub fn low_degree(&self, u: &Element) -> Option<Scalar> {
        u.support().map(|w| self.word_degree(w)).min()
    }

    pub fn is_homogeneous(&self, u: &Element) -> bool {
        let mut degs = u.support().map(|w| self.word_degree(w));
        match degs.next() {
            None => false,
            Some(first) => degs.all(|d| d == first),
        }
    }

    /// The highest-degree homogeneous component.
    pub fn leading(&self, u: &Element) -> Result<Element, GradingError> {
        let Degree::Finite(top) = self.degree(u) else {
            return Err(GradingError::ZeroElement);
        };
        Ok(u.filter(|w| self.word_degree(w) == top))
    }

    /// Homogeneous component of degree `d` (possibly zero).
    pub fn component(&self, u: &Element, d: &Scalar) -> Element {
        u.filter(|w| &self.word_degree(w) == d)
    }

    pub fn decompose(&self, u: &Element) -> BTreeMap<Scalar, Element> {
        let mut parts: BTreeMap<Scalar, Element> = BTreeMap::new();
        for (w, c) in u.terms() {
            parts.entry(self.word_degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        parts
    }
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(scalar::format).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_word};
    use crate::scalar::int;

    fn e(s: &str) -> Element {
        parse_element(s, 2).unwrap()
    }

    #[test]
    fn word_degrees() {
        let h = Weighting::from_ints(&[1, 1]);
        assert_eq!(h.word_degree(&parse_word("ab", 2).unwrap()), int(2));
        let h2 = Weighting::from_ints(&[1, -1]);
        assert_eq!(h2.word_degree(&parse_word("ab", 2).unwrap()), int(0));
        assert_eq!(h2.word_degree(&Word::identity()), int(0));
    }

    #[test]
    fn degrees_and_leading() {
        let h = Weighting::from_ints(&[1, 1]);
        let h2 = Weighting::from_ints(&[1, -1]);
        let u = e("ab + a");
        assert_eq!(h.degree(&u), Degree::Finite(int(2)));
        assert_eq!(h2.degree(&u), Degree::Finite(int(1)));
        assert_eq!(h.degree(&Element::zero()), Degree::NegInfinity);
        assert_eq!(h.leading(&u).unwrap(), e("ab"));
        assert_eq!(h2.leading(&u).unwrap(), e("a"));
        assert_eq!(h.leading(&e("ab+ba")).unwrap(), e("ab+ba"));
        assert_eq!(h.leading(&Element::zero()), Err(GradingError::ZeroElement));
    }

    #[test]
    fn decomposition() {
        let h = Weighting::from_ints(&[1, 1]);
        let d = h.decompose(&e("ab + ba + a"));
        assert_eq!(d.len(), 2);
        assert_eq!(d[&int(2)], e("ab+ba"));
        assert_eq!(d[&int(1)], e("a"));
        assert_eq!(h.decompose(&e("ab+ba")).len(), 1);
        assert!(h.decompose(&Element::zero()).is_empty());
    }

    #[test]
    fn parse_weights() {
        let h = Weighting::parse("1/2,-3").unwrap();
        assert_eq!(h.weights(), &[scalar::ratio(1, 2), int(-3)]);
        assert!(Weighting::parse("1,x").is_err());
        assert!(h.check_rank(3).is_err());
        assert_eq!(h.to_string(), "1/2,-3");
    }

    #[test]
    fn degree_order_puts_neg_infinity_first() {
        assert!(Degree::NegInfinity < Degree::Finite(int(-100)));
        assert_eq!(&Degree::NegInfinity + &Degree::Finite(int(1)), Degree::NegInfinity);
    }
}
