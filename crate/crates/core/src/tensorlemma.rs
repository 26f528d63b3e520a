//! Tensors `s in U (x) V` over word spans, their rank and minimal spaces,
//! and a check that star-commuting tensors are proportional.
//!
//! The star product is `(x (x) y) * (z (x) w) = x (x) yz (x) w`, with the
//! middle factor multiplied in the group algebra.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Element;
use crate::linalg::{self, RowSpace, SparseVec};
use crate::scalar::Scalar;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("matrix is {rows}x{cols} but the bases have sizes {u} and {v}")]
    DimensionMismatch { rows: usize, cols: usize, u: usize, v: usize },
    #[error("tensors are declared over different bases")]
    BasisMismatch,
    #[error("star-commuting tensors are not proportional")]
    LemmaViolation,
}

/// `sum m[i][j] * u_basis[i] (x) v_basis[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    u_basis: Vec<Word>,
    v_basis: Vec<Word>,
    matrix: Vec<Vec<Scalar>>,
}

impl TensorElement {
    pub fn new(
        u_basis: Vec<Word>,
        v_basis: Vec<Word>,
        matrix: Vec<Vec<Scalar>>,
    ) -> Result<Self, TensorError> {
        let bad = matrix.len() != u_basis.len() || matrix.iter().any(|r| r.len() != v_basis.len());
        if bad {
            return Err(TensorError::DimensionMismatch {
                rows: matrix.len(),
                cols: matrix.first().map_or(0, Vec::len),
                u: u_basis.len(),
                v: v_basis.len(),
            });
        }
        Ok(TensorElement { u_basis, v_basis, matrix })
    }

    pub fn u_basis(&self) -> &[Word] {
        &self.u_basis
    }

    pub fn v_basis(&self) -> &[Word] {
        &self.v_basis
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        TensorElement { matrix, ..self.clone() }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.same_bases(other)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(TensorElement { matrix, ..self.clone() })
    }

    fn same_bases(&self, other: &TensorElement) -> Result<(), TensorError> {
        if self.u_basis != other.u_basis || self.v_basis != other.v_basis {
            return Err(TensorError::BasisMismatch);
        }
        Ok(())
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.matrix.iter().enumerate().flat_map(|(i, r)| {
            r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(j, x)| (i, j, x))
        })
    }
}

/// Rank and the minimal subspaces `U_s`, `V_s` with `s in U_s (x) V_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSpaces {
    pub rank: usize,
    pub u_space: Vec<Element>,
    pub v_space: Vec<Element>,
}

fn combine(basis: &[Word], v: SparseVec) -> Element {
    Element::from_terms(v.into_iter().map(|(i, c)| (basis[i].clone(), c)))
}

pub fn tensor_spaces(s: &TensorElement) -> TensorSpaces {
    let rows = linalg::dense_rows(&s.matrix);
    let mut columns: Vec<SparseVec> = vec![SparseVec::new(); s.v_basis.len()];
    for (i, row) in rows.iter().enumerate() {
        for (&j, x) in row {
            columns[j].insert(i, x.clone());
        }
    }
    let v_rows = RowSpace::from_rows(rows).into_rows();
    let u_rows = RowSpace::from_rows(columns).into_rows();
    TensorSpaces {
        rank: v_rows.len(),
        u_space: u_rows.into_iter().map(|v| combine(&s.u_basis, v)).collect(),
        v_space: v_rows.into_iter().map(|v| combine(&s.v_basis, v)).collect(),
    }
}

pub fn tensor_rank(s: &TensorElement) -> usize {
    linalg::rank(linalg::dense_rows(&s.matrix))
}

/// Coordinates in `U (x) Z (x) V`, the middle factor indexed by words.
pub type StarProduct = BTreeMap<(usize, Word, usize), Scalar>;

pub fn star(s: &TensorElement, t: &TensorElement) -> Result<StarProduct, TensorError> {
    s.same_bases(t)?;
    let mut out = StarProduct::new();
    for (i, j, x) in s.entries() {
        for (k, l, y) in t.entries() {
            let middle = s.v_basis[j].mul(&t.u_basis[k]);
            let entry = out.entry((i, middle, l)).or_insert_with(Scalar::zero);
            *entry += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dependence {
    /// `s = lambda * t`
    SOverT(Scalar),
    /// `t = lambda * s`, used when `t = 0`
    TOverS(Scalar),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOutcome {
    Dependent(Dependence),
    NotStarCommuting,
    /// A declared basis repeats a word, so the spans are not modelled
    /// faithfully by the coefficient matrices.
    ZeroDivisorInMu,
}

fn ratio(s: &TensorElement, t: &TensorElement) -> Option<Scalar> {
    let (i, j, y) = t.entries().next()?;
    let lambda = &s.matrix[i][j] / y;
    (t.scale(&lambda) == *s).then_some(lambda)
}

/// If `s * t = t * s` the tensors must be linearly dependent; a pair that
/// star-commutes without being proportional is reported as an error.
pub fn lemma_check(s: &TensorElement, t: &TensorElement) -> Result<LemmaOutcome, TensorError> {
    s.same_bases(t)?;
    let distinct = |b: &[Word]| b.iter().collect::<BTreeSet<_>>().len() == b.len();
    if !distinct(&s.u_basis) || !distinct(&s.v_basis) {
        return Ok(LemmaOutcome::ZeroDivisorInMu);
    }
    if star(s, t)? != star(t, s)? {
        return Ok(LemmaOutcome::NotStarCommuting);
    }
    let dep = if t.is_zero() {
        Dependence::TOverS(Scalar::zero())
    } else {
        Dependence::SOverT(ratio(s, t).ok_or(TensorError::LemmaViolation)?)
    };
    Ok(LemmaOutcome::Dependent(dep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;
    use crate::scalar::int;

    fn w(s: &str) -> Word {
        parse_word(s, 2).unwrap()
    }

    fn tensor(u: &[&str], v: &[&str], m: &[&[i64]]) -> TensorElement {
        TensorElement::new(
            u.iter().map(|s| w(s)).collect(),
            v.iter().map(|s| w(s)).collect(),
            m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn spaces() {
        let id = tensor(&["a", "b"], &["a", "b"], &[&[1, 0], &[0, 1]]);
        assert_eq!(tensor_spaces(&id).rank, 2);
        let r1 = tensor(&["a", "b"], &["a", "b"], &[&[1, 2], &[2, 4]]);
        let sp = tensor_spaces(&r1);
        assert_eq!(sp.rank, 1);
        assert_eq!(sp.u_space.len(), 1);
        assert_eq!(sp.v_space[0].to_string(), "a + 2*b");
        let z = tensor(&["a", "b"], &["a", "b"], &[&[0, 0], &[0, 0]]);
        let sp = tensor_spaces(&z);
        assert_eq!((sp.rank, sp.u_space.len(), sp.v_space.len()), (0, 0, 0));
    }

    #[test]
    fn lemma_examples() {
        let s = tensor(&["a"], &["b"], &[&[1]]);
        let t = tensor(&["a"], &["b"], &[&[2]]);
        assert_eq!(
            lemma_check(&s, &t).unwrap(),
            LemmaOutcome::Dependent(Dependence::SOverT(Scalar::new(1.into(), 2.into())))
        );
        assert_eq!(
            lemma_check(&t, &s).unwrap(),
            LemmaOutcome::Dependent(Dependence::SOverT(int(2)))
        );
        let s = tensor(&["a", "b"], &["a", "b"], &[&[1, 0], &[0, 0]]);
        let t = tensor(&["a", "b"], &["a", "b"], &[&[0, 0], &[0, 1]]);
        assert_eq!(lemma_check(&s, &t).unwrap(), LemmaOutcome::NotStarCommuting);
        let zero = tensor(&["a", "b"], &["a", "b"], &[&[0, 0], &[0, 0]]);
        assert_eq!(
            lemma_check(&zero, &t).unwrap(),
            LemmaOutcome::Dependent(Dependence::SOverT(int(0)))
        );
        let dup = tensor(&["a", "a"], &["b"], &[&[1], &[1]]);
        assert_eq!(lemma_check(&dup, &dup).unwrap(), LemmaOutcome::ZeroDivisorInMu);
    }

    #[test]
    fn dimension_checks() {
        let r = TensorElement::new(vec![w("a")], vec![w("b")], vec![vec![int(1), int(2)]]);
        assert!(matches!(r, Err(TensorError::DimensionMismatch { .. })));
        let s = tensor(&["a"], &["b"], &[&[1]]);
        let t = tensor(&["b"], &["b"], &[&[1]]);
        assert_eq!(lemma_check(&s, &t), Err(TensorError::BasisMismatch));
    }
}
