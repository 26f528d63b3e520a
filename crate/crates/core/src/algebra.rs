//! Sparse elements of the group algebra Q[F].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};
use crate::words::Word;

/// A finite Q-linear combination of reduced words.
///
/// Zero coefficients are never stored; terms iterate in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Zero,
    Scalar,
    Monomial,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: Kind,
    pub is_unit: bool,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::monomial(c, Word::identity())
    }

    pub fn word(w: Word) -> Self {
        Element::monomial(Scalar::one(), w)
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Element { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Longest support word, 0 for the zero element.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Highest generator index mentioned in the support.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_generator).max()
    }

    /// Support contained in `{1}` (zero included).
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Word::is_identity)
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        self.is_scalar().then(|| self.coefficient(&Word::identity()))
    }

    pub fn as_monomial(&self) -> Option<(&Word, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn classify(&self) -> Classification {
        let kind = match self.terms.len() {
            0 => Kind::Zero,
            1 if self.is_scalar() => Kind::Scalar,
            1 => Kind::Monomial,
            _ => Kind::General,
        };
        // Units of Q[F] are exactly the nonzero monomials (scalars included).
        Classification { kind, is_unit: self.terms.len() == 1 }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a monomial; `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Element> {
        let (w, c) = self.as_monomial()?;
        Some(Element::monomial(c.recip(), w.inverse()))
    }

    /// Integer power, negative exponents allowed only for units.
    pub fn pow_signed(&self, n: i64) -> Option<Element> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            Some(self.unit_inverse()?.pow(n.unsigned_abs() as u32))
        }
    }

    /// Applies a word homomorphism term by term.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> Element {
        Element::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Sum of the terms whose words satisfy `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn commutator(&self, other: &Element) -> Element {
        &(self * other) - &(other * self)
    }

    /// JSON form: terms as `{"word", "coeff"}` in shortlex order.
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(w, c)| TermJson { word: w.to_string(), coeff: scalar::format(c) })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.mul(w2), c1 * c2);
            }
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl From<Word> for Element {
    fn from(w: Word) -> Self {
        Element::word(w)
    }
}

impl fmt::Display for Element {
    /// Terms in shortlex order, e.g. `1/2 - a + 3*ab^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_identity() {
                write!(f, "{}", scalar::format(&mag))?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{}*{w}", scalar::format(&mag))?;
            }
        }
        Ok(())
    }
}
