//! Subspaces of F_q^n in reduced row echelon form, the subspace distance, and
//! the pivot profile `v(X)`, `I(X)`, `CP(X)`.
//!
//! Coordinates are indexed from 0, left to right. Two subspaces are equal iff
//! their RREF matrices are equal.

use crate::bounds;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::prime;
use num_traits::ToPrimitive;

/// Default cap on the number of subspaces `enumerate_grassmannian` produces.
pub const DEFAULT_GRASSMANNIAN_CAP: u64 = 1_000_000;

/// A k-dimensional subspace of F_q^n, stored as its k×n RREF generator matrix.
///
/// The derived ordering compares `(q, n)` and then the rows lexicographically;
/// within one space this is the canonical code order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
}

/// Pivot indicator `v`, non-pivot positions `I`, and the selector matrix `CP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotProfile {
    pub indicator: Vec<u8>,
    pub non_pivots: Vec<usize>,
    pub selector: Vec<Vec<u32>>,
}

/// Gauss-Jordan elimination in place; returns the pivot columns. Zero rows are
/// dropped from `rows`.
fn reduce(rows: &mut Vec<Vec<u32>>, q: u32, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = prime::inv(rows[r][col], q);
        for x in rows[r].iter_mut() {
            *x = prime::mul(*x, scale, q);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = prime::sub(*x, prime::mul(factor, p, q), q);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank over F_q of a set of equal-length rows.
pub fn rank(q: u32, rows: &[Vec<u32>]) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    let mut work = rows.to_vec();
    reduce(&mut work, q, n).len()
}

impl Subspace {
    /// Canonical RREF basis of the span of `vectors`.
    pub fn from_vectors(q: u32, n: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::VectorLength { expected: n, got: v.len() });
            }
            if let Some(&s) = v.iter().find(|&&s| s >= q) {
                return Err(Error::SymbolOutOfRange { symbol: s, q });
            }
        }
        let mut rows = vectors.to_vec();
        reduce(&mut rows, q, n);
        Ok(Subspace { q, n, rows })
    }

    /// Span of a set of field elements, through their coordinate vectors.
    pub fn from_elements(field: &FieldContext, elements: &[FieldElement]) -> Result<Self> {
        let vectors: Vec<_> = elements.iter().map(|&x| field.vector_of(x)).collect();
        Self::from_vectors(field.q(), field.n(), &vectors)
    }

    /// The whole space F_q^n.
    pub fn full(q: u32, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Subspace { q, n, rows }
    }

    /// Takes rows that must already be the RREF of a subspace.
    pub fn from_rref(q: u32, n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let s = Self::from_vectors(q, n, &rows)?;
        if s.rows != rows {
            return Err(Error::InvalidParameter("rows are not in reduced row echelon form".into()));
        }
        Ok(s)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn check_field(&self, field: &FieldContext) -> Result<()> {
        if field.q() != self.q || field.n() != self.n {
            return Err(Error::SpaceMismatch(format!(
                "subspace of F_{}^{} used with GF({}^{})",
                self.q,
                self.n,
                field.q(),
                field.n()
            )));
        }
        Ok(())
    }

    fn check_same_space(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::SpaceMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.q, self.n, other.q, other.n
            )));
        }
        Ok(())
    }

    /// All `q^k` vectors of the subspace. Entry `c` is the combination whose
    /// coefficient on row `r` is digit `r` of `c` in base q (row 0 least
    /// significant).
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let k = self.dim();
        let count = (self.q as usize).pow(k as u32);
        let mut out = Vec::with_capacity(count);
        for c in 0..count {
            let mut v = vec![0u32; self.n];
            let mut rest = c;
            for row in &self.rows {
                let a = (rest % self.q as usize) as u32;
                rest /= self.q as usize;
                if a != 0 {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = prime::add(*x, prime::mul(a, y, self.q), self.q);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// The `q^k` field elements of the subspace, in `vectors()` order.
    pub fn elements(&self, field: &FieldContext) -> Result<Vec<FieldElement>> {
        self.check_field(field)?;
        self.vectors().iter().map(|v| field.element_of(v)).collect()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        if v.len() != self.n {
            return false;
        }
        self.reduce_vector(v).iter().all(|&x| x == 0)
    }

    /// Subtracts `v[p] * row` for every pivot column `p`; the result is zero
    /// on all pivot columns and differs from `v` by an element of the subspace.
    pub fn reduce_vector(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for row in &self.rows {
            let p = row.iter().position(|&x| x != 0).expect("RREF rows are nonzero");
            let factor = out[p];
            if factor != 0 {
                for (x, &y) in out.iter_mut().zip(row) {
                    *x = prime::sub(*x, prime::mul(factor, y, self.q), self.q);
                }
            }
        }
        out
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_same_space(other)?;
        let stacked: Vec<_> = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(self.dim() + other.dim() - rank(self.q, &stacked))
    }

    /// `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let inter = self.intersection_dim(other)?;
        Ok(self.dim() + other.dim() - 2 * inter)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
            .collect()
    }

    pub fn pivot_profile(&self) -> PivotProfile {
        let mut indicator = vec![0u8; self.n];
        for p in self.pivots() {
            indicator[p] = 1;
        }
        let non_pivots: Vec<usize> = (0..self.n).filter(|&i| indicator[i] == 0).collect();
        let selector = non_pivots
            .iter()
            .map(|&i| (0..self.n).map(|j| u32::from(i == j)).collect())
            .collect();
        PivotProfile { indicator, non_pivots, selector }
    }

    /// `{α x : x ∈ X}`, again a subspace of the same dimension.
    pub fn cyclic_shift(&self, field: &FieldContext) -> Result<Subspace> {
        let shifted: Vec<_> = self
            .elements(field)?
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(|x| field.mul_alpha(x))
            .collect();
        let out = Subspace::from_elements(field, &shifted)?;
        debug_assert_eq!(out.dim(), self.dim());
        Ok(out)
    }
}

/// k-subsets of `0..n` in colexicographic order.
fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        // advance to the next colex subset: bump the first element that can
        // move without colliding with its successor, reset the ones before it
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { c[i + 1] } else { n };
            if c[i] + 1 < limit {
                break;
            }
            i += 1;
        }
        if i == k {
            return out;
        }
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

/// Every k-dimensional subspace of F_q^n exactly once: pivot sets in colex
/// order, then the free RREF entries counted in base q.
pub fn enumerate_grassmannian(q: u32, n: usize, k: usize, cap: u64) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k={k} exceeds n={n}")));
    }
    let count = bounds::gaussian(n as u64, k as u64, q as u64);
    if count.to_u64().is_none_or(|c| c > cap) {
        return Err(Error::CapExceeded { what: "grassmannian", count: count.to_string(), cap });
    }
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    for pivots in colex_subsets(n, k) {
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| ((p + 1)..n).filter(|&c| !is_pivot[c]).map(move |c| (r, c)))
            .collect();
        let assignments = (q as u64).pow(free.len() as u32);
        for a in 0..assignments {
            let mut rows = vec![vec![0u32; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut rest = a;
            for &(r, c) in &free {
                rows[r][c] = (rest % q as u64) as u32;
                rest /= q as u64;
            }
            out.push(Subspace { q, n, rows });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sub2(rows: &[&[u32]], n: usize) -> Subspace {
        let v: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_vectors(2, n, &v).unwrap()
    }

    #[test]
    fn rref_examples() {
        let s = sub2(&[&[0, 1, 1], &[1, 0, 1]], 3);
        assert_eq!(s.rows(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let s = sub2(&[&[0, 0, 1]], 3);
        assert_eq!(s.rows(), &[vec![0, 0, 1]]);
        assert_eq!(s.dim(), 1);
        let s = sub2(&[&[1, 1, 0], &[1, 1, 0]], 3);
        assert_eq!(s.rows(), &[vec![1, 1, 0]]);
        let s = sub2(&[&[0, 0, 0]], 3);
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn rref_over_f3() {
        let s = Subspace::from_vectors(3, 3, &[vec![2, 1, 0], vec![1, 1, 1]]).unwrap();
        // row0 = 2*(2,1,0) = (1,2,0); row1 - row0 = (0,2,1) -> (0,1,2); row0 -= 2*row1
        assert_eq!(s.rows(), &[vec![1, 0, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn from_vectors_errors() {
        assert!(matches!(
            Subspace::from_vectors(2, 3, &[vec![1, 0]]),
            Err(Error::VectorLength { .. })
        ));
        assert!(matches!(
            Subspace::from_vectors(2, 3, &[vec![1, 0, 2]]),
            Err(Error::SymbolOutOfRange { .. })
        ));
        assert!(Subspace::from_rref(2, 3, vec![vec![0, 1, 1], vec![1, 0, 1]]).is_err());
    }

    #[test]
    fn elements_examples() {
        let f = FieldContext::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let zero = Subspace::from_vectors(2, 3, &[]).unwrap();
        assert_eq!(zero.elements(&f).unwrap(), vec![FieldElement::Zero]);
        let line = sub2(&[&[1, 0, 0]], 3);
        assert_eq!(
            line.elements(&f).unwrap(),
            vec![FieldElement::Zero, FieldElement::Power(0)]
        );
        let plane = sub2(&[&[1, 0, 1], &[0, 1, 1]], 3);
        let els = plane.elements(&f).unwrap();
        // 0, (1,0,1)=1+α², (0,1,1)=α+α², (1,1,0)=1+α=α³
        let expect = [
            FieldElement::Zero,
            f.element_of(&[1, 0, 1]).unwrap(),
            f.element_of(&[0, 1, 1]).unwrap(),
            FieldElement::Power(3),
        ];
        assert_eq!(els, expect);
        let other = FieldContext::new(2, 4, None).unwrap();
        assert!(plane.elements(&other).is_err());
    }

    #[test]
    fn distance_examples() {
        let a = sub2(&[&[1, 0, 0, 0], &[0, 1, 0, 0]], 4);
        let b = sub2(&[&[1, 0, 0, 0], &[0, 0, 1, 0]], 4);
        let c = sub2(&[&[0, 0, 1, 0], &[0, 0, 0, 1]], 4);
        assert_eq!(a.distance(&a).unwrap(), 0);
        assert_eq!(a.intersection_dim(&b).unwrap(), 1);
        assert_eq!(a.distance(&b).unwrap(), 2);
        assert_eq!(a.distance(&c).unwrap(), 4);
        let d = sub2(&[&[1, 0, 0]], 3);
        assert!(a.distance(&d).is_err());
    }

    #[test]
    fn pivot_profile_examples() {
        let s = sub2(&[&[1, 0, 1], &[0, 1, 1]], 3);
        let p = s.pivot_profile();
        assert_eq!(p.indicator, vec![1, 1, 0]);
        assert_eq!(p.non_pivots, vec![2]);
        assert_eq!(p.selector, vec![vec![0, 0, 1]]);

        let full = Subspace::full(2, 3);
        let p = full.pivot_profile();
        assert!(p.non_pivots.is_empty() && p.selector.is_empty());

        let s = sub2(&[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]], 5);
        assert_eq!(s.pivot_profile().indicator, vec![0, 0, 1, 1, 1]);
    }

    #[test]
    fn colex_order() {
        assert_eq!(
            colex_subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(colex_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(colex_subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn grassmannian_counts() {
        assert_eq!(enumerate_grassmannian(2, 3, 2, 1000).unwrap().len(), 7);
        assert_eq!(enumerate_grassmannian(2, 2, 1, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_grassmannian(3, 4, 4, 1000).unwrap().len(), 1);
        for (q, n) in [(2u32, 5usize), (3, 4), (2, 6)] {
            for k in 0..=n {
                let all = enumerate_grassmannian(q, n, k, 1_000_000).unwrap();
                let expected = bounds::gaussian(n as u64, k as u64, q as u64);
                assert_eq!(all.len().to_string(), expected.to_string());
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                for s in &all {
                    assert_eq!(s.dim(), k);
                    assert_eq!(&Subspace::from_vectors(q, n, s.rows()).unwrap(), s);
                }
            }
        }
        assert!(matches!(
            enumerate_grassmannian(2, 12, 6, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn shift_orbit_returns_home() {
        let f = FieldContext::new(2, 4, None).unwrap();
        let x = sub2(&[&[1, 0, 0, 1], &[0, 1, 1, 0]], 4);
        let mut y = x.clone();
        for _ in 0..f.group_order() {
            y = y.cyclic_shift(&f).unwrap();
            assert_eq!(y.dim(), 2);
        }
        assert_eq!(y, x);

        let line = Subspace::from_elements(&f, &[FieldElement::Power(6)]).unwrap();
        let shifted = line.cyclic_shift(&f).unwrap();
        assert_eq!(shifted, Subspace::from_elements(&f, &[FieldElement::Power(7)]).unwrap());
    }

    #[test]
    fn reduce_vector_lands_on_non_pivots() {
        let s = sub2(&[&[1, 0, 1, 1], &[0, 1, 1, 0]], 4);
        let r = s.reduce_vector(&[1, 1, 1, 1]);
        assert_eq!(r, vec![0, 0, 1, 0]);
        assert!(s.contains_vector(&[1, 1, 0, 1]));
        assert!(!s.contains_vector(&[0, 0, 1, 0]));
    }

    #[test]
    fn triangle_inequality_exhaustive() {
        for n in 2..=5 {
            let all: Vec<Subspace> =
                (0..=n).flat_map(|k| enumerate_grassmannian(2, n, k, 10_000).unwrap()).collect();
            let dist: Vec<Vec<usize>> = all
                .iter()
                .map(|a| all.iter().map(|b| a.distance(b).unwrap()).collect())
                .collect();
            for a in 0..all.len() {
                for b in 0..all.len() {
                    assert_eq!(dist[a][b], dist[b][a]);
                    assert_eq!(dist[a][b] == 0, a == b);
                    for c in 0..all.len() {
                        assert!(dist[a][b] <= dist[a][c] + dist[c][b]);
                    }
                }
            }
        }
    }
}
