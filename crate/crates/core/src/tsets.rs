//! The classes T1(r), T2(r), T(r) of homogeneous elements, the prefix and
//! suffix antichains O and Õ, and the factorizations of words in T(r).
//!
//! For `w` in `T(r)` there is exactly one reduced factorization
//! `w = w0 · w1 · w2` with `w0` in O and `w2` in Õ. For a product `w = uv`
//! of two such words with `h(u) = ell`, the middle factor splits further as
//! `w1 = u1 · (u2 v0) · v1`, and that split can be recovered from `w` and
//! `ell` alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Element;
use crate::grading::{Degree, Weighting};
use crate::scalar::Scalar;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TError {
    #[error("r must be positive")]
    NonpositiveR,
    #[error("input is the zero element")]
    ZeroElement,
    #[error("input does not lie in T(r)")]
    NotInT,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("input has non-positive degree")]
    NonpositiveDegree,
    #[error("no middle split exists for this word and ell")]
    SplitUnavailable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TParams {
    r: Scalar,
    h: Weighting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TMembership {
    pub in_o: bool,
    pub in_otilde: bool,
    pub in_t1: bool,
    pub in_t2: bool,
    pub in_t: bool,
}

/// `w = w0 · w1 · w2` with `w0` in O, `w2` in Õ and `w1 != 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor3 {
    pub w0: Word,
    pub w1: Word,
    pub w2: Word,
}

/// `w1 = w10 · w11 · w12`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MiddleSplit {
    pub w10: Word,
    pub w11: Word,
    pub w12: Word,
}

/// Parts of an element keyed by the middle factor of their support words.
pub type MiddleDecomposition = BTreeMap<Word, Element>;

/// Checks that the concatenation of `parts` is reduced with no identity factor.
pub fn is_reduced_factorization(parts: &[&Word]) -> bool {
    parts.iter().all(|p| !p.is_identity()) && parts.windows(2).all(|p| p[0].joins_reduced(p[1]))
}

impl TParams {
    pub fn new(r: Scalar, h: Weighting) -> Result<Self, TError> {
        if !r.is_positive() {
            return Err(TError::NonpositiveR);
        }
        Ok(TParams { r, h })
    }

    pub fn r(&self) -> &Scalar {
        &self.r
    }

    pub fn weighting(&self) -> &Weighting {
        &self.h
    }

    /// `2(r + max |h(a)|)`, the degree floor of T1.
    pub fn t1_threshold(&self) -> Scalar {
        (&self.r + self.h.max_abs_weight()) * Scalar::from_integer(BigInt::from(2))
    }

    pub fn word_in_o(&self, w: &Word) -> bool {
        let degs = self.h.prefix_degrees(w);
        let (last, proper) = degs.split_last().expect("prefix list is never empty");
        last >= &self.r && proper.iter().all(|d| d.abs() < self.r)
    }

    pub fn word_in_otilde(&self, w: &Word) -> bool {
        let total = self.h.word_degree(w);
        if total < self.r {
            return false;
        }
        // proper suffixes have degree h(w) - h(prefix) for nonempty prefixes
        self.h.prefix_degrees(w)[1..].iter().all(|p| (&total - p).abs() < self.r)
    }

    fn homogeneous_degree(&self, u: &Element) -> Option<Scalar> {
        if self.h.is_homogeneous(u) {
            self.h.degree(u).finite().cloned()
        } else {
            None
        }
    }

    pub fn in_t1(&self, u: &Element) -> bool {
        self.homogeneous_degree(u).is_some_and(|d| d >= self.t1_threshold())
    }

    pub fn in_t2(&self, u: &Element) -> bool {
        let Some(d) = self.homogeneous_degree(u) else {
            return false;
        };
        if !d.is_positive() {
            return false;
        }
        let upper = &d + &self.r;
        let lower = -self.r.clone();
        u.support()
            .all(|w| self.h.prefix_degrees(w).iter().all(|p| p > &lower && p < &upper))
    }

    pub fn in_t(&self, u: &Element) -> bool {
        self.in_t1(u) && self.in_t2(u)
    }

    /// Membership report; `in_o` and `in_otilde` refer to the support word of
    /// a monomial input and are false otherwise.
    pub fn membership(&self, u: &Element) -> Result<TMembership, TError> {
        if u.is_zero() {
            return Err(TError::ZeroElement);
        }
        let (in_o, in_otilde) = match u.as_monomial() {
            Some((w, _)) => (self.word_in_o(w), self.word_in_otilde(w)),
            None => (false, false),
        };
        let in_t1 = self.in_t1(u);
        let in_t2 = self.in_t2(u);
        Ok(TMembership { in_o, in_otilde, in_t1, in_t2, in_t: in_t1 && in_t2 })
    }

    pub fn word_in_t(&self, w: &Word) -> bool {
        self.in_t(&Element::word(w.clone()))
    }

    /// The unique factorization `w = w0 · w1 · w2` with `w0` in O and `w2` in Õ.
    pub fn factorize3(&self, w: &Word) -> Result<Factor3, TError> {
        if !self.word_in_t(w) {
            return Err(TError::NotInT);
        }
        let degs = self.h.prefix_degrees(w);
        let total = degs.last().expect("nonempty").clone();
        let k0 = degs.iter().position(|d| d >= &self.r).ok_or(TError::NotInT)?;
        // suffix of length k has degree total - degs[n-k]
        let n = w.len();
        let k2 = (0..=n).find(|&k| &total - &degs[n - k] >= self.r).ok_or(TError::NotInT)?;
        if k0 + k2 >= n {
            return Err(TError::NotInT);
        }
        let w0 = w.prefix(k0);
        let w2 = w.suffix(k2);
        let w1 = w0.inverse().mul(w).mul(&w2.inverse());
        Ok(Factor3 { w0, w1, w2 })
    }

    /// Splits the middle factor of `w = uv` given only `w` and `ell = h(u)`.
    pub fn middle_split(&self, w: &Word, ell: &Scalar) -> Result<MiddleSplit, TError> {
        let f = self.factorize3(w)?;
        let degs = self.h.prefix_degrees(w);
        let low = ell - &self.r;
        let high = ell + &self.r;
        let p_len = (0..degs.len()).rev().find(|&k| degs[k] <= low).ok_or(TError::SplitUnavailable)?;
        let q_len = (0..degs.len()).find(|&k| degs[k] >= high).ok_or(TError::SplitUnavailable)?;
        let p = w.prefix(p_len);
        let q = w.prefix(q_len);
        let w10 = f.w0.inverse().mul(&p);
        let w11 = p.inverse().mul(&q);
        let w12 = q.inverse().mul(w).mul(&f.w2.inverse());
        // Reject an `ell` that is not the degree of a left factor in T(r).
        let rebuilt = w10.mul(&w11).mul(&w12);
        if rebuilt != f.w1 || !is_reduced_factorization(&[&f.w0, &w10, &w11, &w12, &f.w2]) {
            return Err(TError::SplitUnavailable);
        }
        Ok(MiddleSplit { w10, w11, w12 })
    }

    /// Groups the terms of `u` by the middle factor of each support word.
    pub fn split_by_middle(&self, u: &Element) -> Result<MiddleDecomposition, TError> {
        if !self.in_t(u) {
            return Err(TError::NotInT);
        }
        let mut parts: MiddleDecomposition = BTreeMap::new();
        for (w, c) in u.terms() {
            let f = self.factorize3(w)?;
            parts.entry(f.w1).or_default().add_term(w.clone(), c.clone());
        }
        Ok(parts)
    }
}

/// Chooses `(r, n)` with `u^n` in `T(r)` for a homogeneous `u` of positive
/// degree:
/// `r = max(max -h(p), max h(p) - h(u), 0) + 1` over prefixes `p` of
/// support words, and `n` the least integer with `n h(u) >= 2(r + max|h(a)|)`.
pub fn find_admissible_params(u: &Element, h: &Weighting) -> Result<(Scalar, u64), TError> {
    if u.is_zero() {
        return Err(TError::ZeroElement);
    }
    if !h.is_homogeneous(u) {
        return Err(TError::NotHomogeneous);
    }
    let Degree::Finite(d) = h.degree(u) else {
        return Err(TError::ZeroElement);
    };
    if !d.is_positive() {
        return Err(TError::NonpositiveDegree);
    }
    let mut slack = Scalar::zero();
    for w in u.support() {
        for p in h.prefix_degrees(w) {
            slack = slack.max(-p.clone()).max(&p - &d);
        }
    }
    let r = slack + Scalar::one();
    let threshold = (&r + h.max_abs_weight()) * Scalar::from_integer(BigInt::from(2));
    let ratio = threshold / &d;
    let n = ratio.ceil().to_integer().max(BigInt::one());
    let n: u64 = n.try_into().map_err(|_| TError::NonpositiveDegree)?;
    Ok((r, n))
}
