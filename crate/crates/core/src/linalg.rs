//! Exact sparse linear algebra over Q: reduced row echelon forms, ranks,
//! nullspaces and span membership.
//!
//! Pivots are always taken at the lowest column index of a row, so the
//! reduced echelon basis of a subspace is canonical for a fixed column order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Sparse vector indexed by column; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

fn axpy(target: &mut SparseVec, factor: &Scalar, source: &SparseVec) {
    for (&col, x) in source {
        let entry = target.entry(col).or_insert_with(Scalar::zero);
        *entry -= factor * x;
        if entry.is_zero() {
            target.remove(&col);
        }
    }
}

/// A subspace held in reduced row echelon form.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: BTreeMap<usize, SparseVec>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(rows: I) -> Self {
        let mut s = RowSpace::new();
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows ordered by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_values().collect()
    }

    /// Reduces `v` against the current rows; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<usize> = v.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for col in hits {
            if let Some(x) = v.get(&col).cloned() {
                axpy(&mut v, &x, &self.rows[&col]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span. Returns true when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(&pivot).cloned() {
                axpy(row, &x, &v);
            }
        }
        self.rows.insert(pivot, v);
        true
    }

    /// Coordinates of `v` with respect to the echelon rows, keyed by pivot.
    pub fn coordinates(&self, v: &SparseVec) -> Option<BTreeMap<usize, Scalar>> {
        let coords: BTreeMap<usize, Scalar> = v
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        let mut rebuilt = SparseVec::new();
        for (c, x) in &coords {
            axpy(&mut rebuilt, &-x.clone(), &self.rows[c]);
        }
        (rebuilt == *v).then_some(coords)
    }
}

/// Basis of `{x : row · x = 0 for every row}` over columns `0..ncols`,
/// returned in reduced echelon form.
pub fn nullspace(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let space = RowSpace::from_rows(rows);
    let mut basis = RowSpace::new();
    for free in (0..ncols).filter(|c| !space.rows.contains_key(c)) {
        let mut x = SparseVec::new();
        x.insert(free, Scalar::one());
        for (&p, row) in &space.rows {
            if let Some(val) = row.get(&free) {
                x.insert(p, -val.clone());
            }
        }
        basis.insert(x);
    }
    basis.into_rows()
}

pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    RowSpace::from_rows(rows).rank()
}

/// Dense row-major matrix to sparse rows.
pub fn dense_rows(matrix: &[Vec<Scalar>]) -> Vec<SparseVec> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, x)| (c, int(x))).filter(|(_, x)| !x.is_zero()).collect()
    }

    fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
        a.iter().filter_map(|(c, x)| b.get(c).map(|y| x * y)).sum()
    }

    #[test]
    fn rref_is_canonical() {
        let a = RowSpace::from_rows([v(&[(0, 2), (1, 4)]), v(&[(0, 1), (2, 1)])]);
        let b = RowSpace::from_rows([v(&[(0, 1), (1, 2)]), v(&[(1, 2), (2, -1)])]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.clone().into_rows(), b.into_rows());
        assert!(a.contains(&v(&[(0, 3), (1, 2), (2, 2)])));
        assert!(!a.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = vec![v(&[(0, 1), (1, -1)]), v(&[(1, 1), (2, -1), (3, 2)])];
        let ns = nullspace(rows.clone(), 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                assert!(dot(r, x).is_zero());
            }
        }
        assert_eq!(nullspace(Vec::<SparseVec>::new(), 3).len(), 3);
    }

    #[test]
    fn coordinates_rebuild_vector() {
        let s = RowSpace::from_rows([v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])]);
        let target = v(&[(0, 2), (1, 5), (2, 3)]);
        let coords = s.coordinates(&target).unwrap();
        assert_eq!(coords.len(), 2);
        assert!(s.coordinates(&v(&[(2, 1)])).is_none());
    }

    #[test]
    fn dense_rank() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(dense_rows(&m)), 1);
    }
}
