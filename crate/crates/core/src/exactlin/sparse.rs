use std::collections::BTreeMap;

use crate::error::{NcgError, Result};
use crate::scalar::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<F>(Vec<(usize, F)>);

impl<F: Scalar> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, F::one())])
    }

    /// Builds a vector from unordered pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, F)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, c) in pairs {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&i) {
                Some(v) => *v += c,
                None => {
                    acc.insert(i, c);
                }
            }
        }
        SparseVec(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Caller guarantees sorted, deduplicated, nonzero entries.
    pub fn from_sorted_unchecked(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec(entries)
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, c) in &self.0 {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn lead(&self) -> Option<usize> {
        self.0.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> F {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.0[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v.clone() * c.clone())).collect())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c.clone() * y.clone()));
                        b.next();
                    } else {
                        let s = x.clone() + c.clone() * y.clone();
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c.clone() * y.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-F::one(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < other.0.len() {
            let (i, x) = &self.0[a];
            let (j, y) = &other.0[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc += x.clone() * y.clone();
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindex through `f`, which must be injective on the support.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_pairs(self.0.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

/// Sparse matrix in row-major (CSR-like) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Scalar> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::zero(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    /// Duplicate `(row, col)` entries are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, F)>,
    {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(NcgError::Structural(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            buckets[r].push((c, v));
        }
        Ok(SparseMatrix { rows, cols, data: buckets.into_iter().map(SparseVec::from_pairs).collect() })
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<F>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if let Some(c) = row.max_index() {
                if c >= cols {
                    return Err(NcgError::Structural(format!(
                        "row {r} has an entry in column {c} but the matrix has {cols} columns"
                    )));
                }
            }
        }
        Ok(SparseMatrix { rows: rows.len(), cols, data: rows })
    }

    /// `columns[j]` is the image of the j-th basis vector.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Result<Self> {
        let mut triplets = Vec::new();
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                triplets.push((*r, c, v.clone()));
            }
        }
        Self::from_triplets(rows, columns.len(), triplets)
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(NcgError::Structural("ragged dense matrix".into()));
        }
        Ok(SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<F> {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r].get(c)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, F)> {
        self.data.iter().enumerate().find_map(|(r, row)| {
            row.entries().first().map(|(c, v)| (r, *c, v.clone()))
        })
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                buckets[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    /// Column vectors, i.e. images of the standard basis.
    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    /// Matrix-vector product `M x`.
    pub fn apply(&self, x: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_sorted_unchecked(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(r, row)| {
                    let v = row.dot(x);
                    (!v.is_zero()).then_some((r, v))
                })
                .collect(),
        )
    }

    /// Product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(NcgError::Structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::zero();
                for (k, v) in row.iter() {
                    acc = acc.axpy(v, &rhs.data[*k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn add(&self, rhs: &SparseMatrix<F>) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &SparseMatrix<F>) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// `P_rows · M · P_cols`, where `row_perm[i]` is the new position of row i.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(NcgError::Structural("permutation length mismatch".into()));
        }
        let mut triplets = Vec::with_capacity(self.nnz());
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                triplets.push((row_perm[r], col_perm[*c], v.clone()));
            }
        }
        Self::from_triplets(self.rows, self.cols, triplets)
    }

    fn check_same_shape(&self, rhs: &SparseMatrix<F>) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(NcgError::Structural(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{F3, Q};

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_pairs([(0, q(1)), (2, q(3))]);
        let b = SparseVec::from_pairs([(2, q(1)), (5, q(1))]);
        let c = a.axpy(&q(-3), &b);
        assert_eq!(c.entries(), &[(0, q(1)), (5, q(-3))]);
    }

    #[test]
    fn from_pairs_drops_zero_sums() {
        let v = SparseVec::from_pairs([(1, F3::new(1)), (1, F3::new(2)), (0, F3::new(1))]);
        assert_eq!(v.entries(), &[(0, F3::new(1))]);
    }

    #[test]
    fn out_of_bounds_triplet_is_structural() {
        let err = SparseMatrix::from_triplets(2, 2, [(2, 0, q(1))]).unwrap_err();
        assert!(matches!(err, NcgError::Structural(_)));
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(0), q(1)]]).unwrap();
        let b = a.transpose();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense(), vec![vec![q(5), q(2)], vec![q(2), q(1)]]);
        assert!(a.mul(&SparseMatrix::zeros(3, 1)).is_err());
    }
}
