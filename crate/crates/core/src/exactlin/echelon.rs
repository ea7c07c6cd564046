use std::collections::BTreeMap;

use super::sparse::{SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Incremental row echelon form over a field.
///
/// Each stored pivot row is monic at its leading column, and leading columns
/// are distinct. Membership therefore only needs leading-term reduction.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Scalar> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<F: Scalar> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon form of a set of vectors. Sparsest vectors go in first, which
    /// keeps fill-in low on the very sparse tensor-basis matrices.
    pub fn from_vectors<'a, I>(vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec<F>>,
    {
        let mut order: Vec<&SparseVec<F>> = vectors.into_iter().collect();
        order.sort_by_key(|v| (v.nnz(), v.lead()));
        let mut e = Echelon::new();
        for v in order {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Leading-term reduction; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some(lead) = v.lead() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = -v.get(lead);
                    v = v.axpy(&c, p);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        match r.lead() {
            None => false,
            Some(lead) => {
                let inv = r.get(lead).inv().expect("nonzero lead");
                self.pivots.insert(lead, r.scale(&inv));
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Fully reduced pivot rows: every pivot column is zero in all other rows.
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVec<F>> {
        let mut out: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        // Right to left, so rows with larger leads are already reduced.
        for (&lead, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            loop {
                let hit = r
                    .iter()
                    .find(|(c, _)| *c != lead && out.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                match hit {
                    Some((c, v)) => r = r.axpy(&-v, &out[&c]),
                    None => break,
                }
            }
            out.insert(lead, r);
        }
        out
    }
}

/// Exact rank.
pub fn rank<F: Scalar>(m: &SparseMatrix<F>) -> usize {
    // Row rank on the thinner side.
    if m.rows() <= m.cols() {
        Echelon::from_vectors(m.row_vectors()).rank()
    } else {
        let cols = m.columns();
        Echelon::from_vectors(cols.iter()).rank()
    }
}

/// Basis of `{x : M x = 0}`, one vector per non-pivot column.
pub fn kernel_basis<F: Scalar>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let e = Echelon::from_vectors(m.row_vectors());
    let rref = e.reduced_rows();
    let mut free_col_entries: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
    for (&lead, row) in &rref {
        for (c, v) in row.iter() {
            if *c != lead {
                free_col_entries.entry(*c).or_default().push((lead, -v.clone()));
            }
        }
    }
    (0..m.cols())
        .filter(|c| !rref.contains_key(c))
        .map(|f| {
            let mut entries = free_col_entries.remove(&f).unwrap_or_default();
            entries.push((f, F::one()));
            SparseVec::from_pairs(entries)
        })
        .collect()
}

/// Span of the columns of `m`.
pub fn column_space<F: Scalar>(m: &SparseMatrix<F>) -> Echelon<F> {
    let cols = m.columns();
    Echelon::from_vectors(cols.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{F2, Q};

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn rank_examples() {
        let id = SparseMatrix::<Q>::identity(2);
        assert_eq!(rank(&id), 2);
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap();
        assert_eq!(rank(&m), 1);
        let one = F2::new(1);
        let m2 = SparseMatrix::from_dense(&[vec![one, one], vec![one, one]]).unwrap();
        assert_eq!(rank(&m2), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<Q>::identity(3)).is_empty());
        let z = SparseMatrix::<Q>::zeros(3, 3);
        let k = kernel_basis(&z);
        assert_eq!(k.len(), 3);
        assert_eq!(rank(&SparseMatrix::from_columns(3, &k).unwrap()), 3);

        let one = F2::new(1);
        let m = SparseMatrix::from_dense(&[vec![one, one]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k, vec![SparseVec::from_pairs([(0, one), (1, one)])]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = SparseMatrix::from_dense(&[
            vec![q(1), q(2), q(3), q(4)],
            vec![q(2), q(4), q(6), q(8)],
            vec![q(0), q(1), q(-1), q(0)],
        ])
        .unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 4 - rank(&m));
        for v in &k {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn membership() {
        let e = Echelon::from_vectors(&[
            SparseVec::from_pairs([(0, q(1)), (1, q(1))]),
            SparseVec::from_pairs([(1, q(1)), (2, q(1))]),
        ]);
        assert!(e.contains(&SparseVec::from_pairs([(0, q(1)), (2, q(-1))])));
        assert!(!e.contains(&SparseVec::unit(2)));
    }
}
