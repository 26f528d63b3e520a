//! Exact convex hulls in low dimension, and a grading that makes the leading
//! component of an element a non-monomial of positive degree.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::Element;
use crate::grading::Weighting;
use crate::linalg::{self, RowSpace, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("points do not affinely span their ambient space")]
    DegenerateSpan,
    #[error("points have mixed dimensions")]
    DimensionMismatch,
    #[error("support spans a subspace of rank {0} < 2 in the abelianization")]
    RankDeficient(usize),
    #[error("input is the zero element")]
    ZeroElement,
}

pub type Point = Vec<Scalar>;

/// Supporting half-space `normal · x <= offset` of a facet.
///
/// The normal is scaled by a positive factor to coprime integer entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl Facet {
    pub fn value(&self, x: &[Scalar]) -> Scalar {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.value(x) == self.offset
    }
}

fn dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scales by a positive rational to coprime integers.
fn canonical(normal: Vec<Scalar>, offset: Scalar) -> Facet {
    let lcm = normal.iter().chain([&offset]).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> =
        normal.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let scale = Scalar::new(lcm, gcd);
    Facet {
        normal: normal.iter().map(|x| x * &scale).collect(),
        offset: offset * scale,
    }
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), &mut visit);
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => linalg::rank(rest.iter().map(|p| dense(&sub(p, p0)))),
    }
}

/// All facets of the convex hull of a full-dimensional point set.
///
/// Brute force over `dim`-subsets of the points: a subset spanning a
/// hyperplane with every point on one side yields a facet. Returned sorted
/// by normal.
pub fn facets(points: &[Point]) -> Result<Vec<Facet>, HullError> {
    let dim = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != dim) {
        return Err(HullError::DimensionMismatch);
    }
    if dim == 0 || affine_rank(points) < dim {
        return Err(HullError::DegenerateSpan);
    }
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    combinations(points.len(), dim, |idx| {
        let base = &points[idx[0]];
        let rows: Vec<SparseVec> = idx[1..].iter().map(|&i| dense(&sub(&points[i], base))).collect();
        let ns = linalg::nullspace(rows, dim);
        if ns.len() != 1 {
            return;
        }
        let normal: Vec<Scalar> =
            (0..dim).map(|c| ns[0].get(&c).cloned().unwrap_or_else(Scalar::zero)).collect();
        let offset: Scalar = normal.iter().zip(base).map(|(a, b)| a * b).sum();
        let mut above = false;
        let mut below = false;
        for p in points {
            let v: Scalar = normal.iter().zip(p).map(|(a, b)| a * b).sum::<Scalar>() - &offset;
            above |= v.is_positive();
            below |= v.is_negative();
        }
        match (above, below) {
            (true, true) => {}
            (false, _) => {
                found.insert(canonical(normal, offset));
            }
            (true, false) => {
                found.insert(canonical(normal.iter().map(|x| -x).collect(), -offset));
            }
        }
    });
    Ok(found.into_iter().collect())
}

/// True when no point lies on every facet.
pub fn facet_intersection_is_empty(facets: &[Facet]) -> bool {
    let Some(dim) = facets.first().map(|f| f.normal.len()) else {
        return false;
    };
    let coeff = RowSpace::from_rows(facets.iter().map(|f| dense(&f.normal)));
    let augmented = RowSpace::from_rows(facets.iter().map(|f| {
        let mut row = dense(&f.normal);
        if !f.offset.is_zero() {
            row.insert(dim, f.offset.clone());
        }
        row
    }));
    augmented.rank() > coeff.rank()
}

/// Abelianized exponent vector of each support word.
pub fn exponent_vectors(u: &Element, rank: usize) -> Vec<Point> {
    u.support()
        .map(|w| w.abelianize(rank).into_iter().map(|x| Scalar::from_integer(x.into())).collect())
        .collect()
}

/// Rank of the Q-span of the abelianized support.
pub fn support_span_rank(u: &Element, rank: usize) -> usize {
    linalg::rank(exponent_vectors(u, rank).iter().map(|v| dense(v)))
}

/// Builds rational weights with `h(u) > 0` and a non-monomial leading
/// component of `u`.
///
/// The support is mapped to the abelianization, restricted to its span, and
/// together with the origin its convex hull is taken. A facet missing the
/// origin gives a linear form on the span (the lexicographically smallest
/// such normal is used); it is extended by zero on the non-pivot coordinate
/// axes of the echelon basis of the span.
pub fn construct_weighting(u: &Element, rank: usize) -> Result<Weighting, HullError> {
    if u.is_zero() {
        return Err(HullError::ZeroElement);
    }
    let rank = rank.max(u.max_generator().map_or(0, |g| g + 1));
    let vectors = exponent_vectors(u, rank);
    let span = RowSpace::from_rows(vectors.iter().map(|v| dense(v)));
    if span.rank() < 2 {
        return Err(HullError::RankDeficient(span.rank()));
    }
    let pivots: Vec<usize> = span.pivots().collect();
    // In reduced echelon form the coordinates of a span vector are its
    // entries at the pivot columns.
    let mut points: Vec<Point> =
        vectors.iter().map(|v| pivots.iter().map(|&p| v[p].clone()).collect()).collect();
    points.push(vec![Scalar::zero(); pivots.len()]);
    let all = facets(&points)?;
    let chosen = all
        .into_iter()
        .filter(|f| f.offset.is_positive())
        .min_by(|a, b| a.normal.cmp(&b.normal))
        .expect("a bounded polytope has a facet avoiding any given point");
    let mut weights = vec![Scalar::zero(); rank];
    for (i, &p) in pivots.iter().enumerate() {
        weights[p] = chosen.normal[i].clone();
    }
    Ok(Weighting::new(weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::scalar::int;

    fn pts(raw: &[&[i64]]) -> Vec<Point> {
        raw.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    fn facet(n: &[i64], b: i64) -> Facet {
        Facet { normal: n.iter().map(|&x| int(x)).collect(), offset: int(b) }
    }

    #[test]
    fn triangle() {
        let f = facets(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(f, vec![facet(&[-1, 0], 0), facet(&[0, -1], 0), facet(&[1, 1], 1)]);
    }

    #[test]
    fn interior_point_of_an_edge_is_ignored() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]]);
        let f = facets(&p).unwrap();
        assert_eq!(f, vec![facet(&[-1, 0], 0), facet(&[0, -1], 0), facet(&[1, 1], 2)]);
        assert!(f[2].contains(&p[3]));
    }

    #[test]
    fn segment() {
        let f = facets(&pts(&[&[0], &[2]])).unwrap();
        assert_eq!(f, vec![facet(&[-1], 0), facet(&[1], 2)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(facets(&pts(&[&[0, 0], &[1, 1], &[2, 2]])), Err(HullError::DegenerateSpan));
        assert_eq!(facets(&pts(&[&[0, 0], &[1]])), Err(HullError::DimensionMismatch));
        assert_eq!(facets(&[]), Err(HullError::DegenerateSpan));
    }

    #[test]
    fn cube_has_six_facets() {
        let mut raw = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    raw.push(vec![int(x), int(y), int(z)]);
                }
            }
        }
        let f = facets(&raw).unwrap();
        assert_eq!(f.len(), 6);
        assert!(facet_intersection_is_empty(&f));
    }

    #[test]
    fn weighting_examples() {
        let u = parse_element("a+b", 2).unwrap();
        assert_eq!(construct_weighting(&u, 2).unwrap(), Weighting::from_ints(&[1, 1]));
        let u = parse_element("ab+b", 2).unwrap();
        let h = construct_weighting(&u, 2).unwrap();
        assert_eq!(h, Weighting::from_ints(&[0, 1]));
        assert_eq!(h.leading(&u).unwrap(), u);
        let u = parse_element("ab+ba", 2).unwrap();
        assert_eq!(construct_weighting(&u, 2), Err(HullError::RankDeficient(1)));
        assert_eq!(construct_weighting(&Element::zero(), 2), Err(HullError::ZeroElement));
    }

    #[test]
    fn weighting_extends_by_zero_off_the_span() {
        // support spans the (a, b) plane inside rank 3
        let u = parse_element("a + b + ab", 3).unwrap();
        let h = construct_weighting(&u, 3).unwrap();
        assert_eq!(h.weights()[2], int(0));
        assert!(h.degree(&u).finite().unwrap().is_positive());
        assert!(h.leading(&u).unwrap().support_size() >= 2);
    }
}
