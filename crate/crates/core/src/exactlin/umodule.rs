//! Homology of complexes over the truncated polynomial ring `k[u]/u^N`.
//!
//! Everything is reduced to `k`-linear algebra: a free module `(k[u]/u^N)^r`
//! is the `k`-space with basis `e_i u^k` (`k < N`) and `u` acts by shifting
//! `k`. The homology is a finite-dimensional `k`-space with a nilpotent
//! operator `u`, and its Jordan type is read off from the ranks of `u^j`
//! acting on homology.

use serde::Serialize;

use super::echelon::{kernel_basis, Echelon};
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::{NcgError, Result};
use crate::scalar::Scalar;

/// Truncation order `N` of the formal variable `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UTruncation(usize);

impl UTruncation {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(NcgError::InvalidParameter("u-truncation N must be >= 1".into()));
        }
        Ok(UTruncation(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Homology at one position, as `(k[u]/u^N)^free ⊕ ⊕ k[u]/u^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UModuleReport {
    pub free_rank: usize,
    /// Sizes `a` of the torsion summands `k[u]/u^a`, ascending.
    pub torsion_blocks: Vec<usize>,
    /// Every torsion block is shorter than `N - 1`, so none of them can be a
    /// longer summand cut off by the truncation.
    pub saturated_at_n: bool,
    pub truncation: usize,
}

impl UModuleReport {
    /// Jordan type of `u`: `counts[a-1]` blocks of size exactly `a`, `a = 1..=N`.
    fn from_block_counts(counts: &[usize], n: usize) -> Self {
        let free_rank = counts.get(n - 1).copied().unwrap_or(0);
        let mut torsion_blocks = Vec::new();
        for (a, &c) in counts.iter().enumerate().take(n - 1) {
            torsion_blocks.extend(std::iter::repeat_n(a + 1, c));
        }
        Self::new(free_rank, torsion_blocks, n)
    }

    pub fn new(free_rank: usize, mut torsion_blocks: Vec<usize>, truncation: usize) -> Self {
        torsion_blocks.sort_unstable();
        let saturated_at_n = torsion_blocks.iter().all(|&a| a + 1 < truncation);
        UModuleReport { free_rank, torsion_blocks, saturated_at_n, truncation }
    }

    /// Dimension over the base field.
    pub fn k_dimension(&self) -> usize {
        self.free_rank * self.truncation + self.torsion_blocks.iter().sum::<usize>()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion_blocks.is_empty()
    }
}

/// A finite complex of free `k[u]/u^N`-modules
/// `M_0 -> M_1 -> ... -> M_L`, `M_p = (k[u]/u^N)^{ranks[p]}`.
///
/// `differentials[p][j]` is the coefficient of `u^j` in `D_p : M_p -> M_{p+1}`,
/// a `ranks[p+1] x ranks[p]` matrix. Missing powers are zero.
#[derive(Clone, Debug)]
pub struct FreeUComplex<F> {
    pub truncation: UTruncation,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<SparseMatrix<F>>>,
}

impl<F: Scalar> FreeUComplex<F> {
    pub fn new(
        truncation: UTruncation,
        ranks: Vec<usize>,
        differentials: Vec<Vec<SparseMatrix<F>>>,
    ) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(NcgError::Structural(format!(
                "{} positions need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (p, d) in differentials.iter().enumerate() {
            for (j, m) in d.iter().enumerate() {
                if m.rows() != ranks[p + 1] || m.cols() != ranks[p] {
                    return Err(NcgError::Structural(format!(
                        "D_{p} coefficient u^{j} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        ranks[p + 1],
                        ranks[p]
                    )));
                }
            }
        }
        Ok(FreeUComplex { truncation, ranks, differentials })
    }

    /// Checks `D_{p+1} D_p = 0` over `k[u]/u^N`, reporting the first
    /// offending composite entry.
    pub fn check_square_zero(&self) -> Result<()> {
        let n = self.truncation.get();
        for p in 0..self.differentials.len().saturating_sub(1) {
            let (lo, hi) = (&self.differentials[p], &self.differentials[p + 1]);
            for t in 0..n {
                let mut acc = SparseMatrix::zeros(self.ranks[p + 2], self.ranks[p]);
                for a in 0..=t {
                    if let (Some(x), Some(y)) = (hi.get(a), lo.get(t - a)) {
                        acc = acc.add(&x.mul(y)?)?;
                    }
                }
                if let Some((r, c, v)) = acc.first_nonzero() {
                    return Err(NcgError::Contract(format!(
                        "D_{} D_{p} has u^{t} coefficient {v} at ({r}, {c})",
                        p + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `k`-linear expansion of `D_p`; basis index `i * N + k` stands for `e_i u^k`.
    fn expanded(&self, p: usize) -> Result<SparseMatrix<F>> {
        let n = self.truncation.get();
        let mut triplets = Vec::new();
        for (j, m) in self.differentials[p].iter().enumerate().take(n) {
            for (r, row) in m.row_vectors().iter().enumerate() {
                for (c, v) in row.iter() {
                    for k in 0..n - j {
                        triplets.push((r * n + k + j, c * n + k, v.clone()));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(self.ranks[p + 1] * n, self.ranks[p] * n, triplets)
    }

    /// Homology at every position, decomposed over `k[u]/u^N`.
    pub fn decompose(&self) -> Result<Vec<UModuleReport>> {
        self.check_square_zero()?;
        let n = self.truncation.get();
        let expanded: Vec<SparseMatrix<F>> =
            (0..self.differentials.len()).map(|p| self.expanded(p)).collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(self.ranks.len());
        for p in 0..self.ranks.len() {
            let dim = self.ranks[p] * n;
            let cycles = match expanded.get(p) {
                Some(d) => kernel_basis(d),
                None => (0..dim).map(SparseVec::unit).collect(),
            };
            let boundaries = match p.checked_sub(1) {
                Some(q) => Echelon::from_vectors(expanded[q].columns().iter()),
                None => Echelon::new(),
            };
            let shift = |v: &SparseVec<F>| -> SparseVec<F> {
                SparseVec::from_pairs(
                    v.iter().filter(|(i, _)| i % n + 1 < n).map(|(i, c)| (i + 1, c.clone())),
                )
            };
            // r[j] = rank of u^j on homology
            let mut r = Vec::with_capacity(n + 1);
            let mut current = cycles;
            for _ in 0..=n {
                let mut e = boundaries.clone();
                let base = e.rank();
                for v in &current {
                    e.insert(v.clone());
                }
                r.push(e.rank() - base);
                current = current.iter().map(shift).filter(|v| !v.is_zero()).collect();
            }
            out.push(UModuleReport::from_block_counts(&jordan_counts(&r, n), n));
        }
        Ok(out)
    }
}

/// From `r[j] = rank(u^j)` on a nilpotent module, the number of Jordan
/// blocks of each exact size `1..=n`.
fn jordan_counts(r: &[usize], n: usize) -> Vec<usize> {
    let at_least = |a: usize| -> usize {
        let hi = r.get(a - 1).copied().unwrap_or(0);
        let lo = r.get(a).copied().unwrap_or(0);
        hi - lo
    };
    (1..=n).map(|a| at_least(a) - if a < n { at_least(a + 1) } else { 0 }).collect()
}

/// A maximal `u`-string in a graded homology module: a summand generated in
/// degree `start`, spanning `start, start+2, ..., start+2(length-1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct UString {
    pub start: i64,
    pub length: usize,
    pub multiplicity: usize,
}

/// A cohomologically graded complex of `k`-spaces `V_m`, `m ∈ [lo, hi]`, with
/// a differential of degree `+1` and a nilpotent chain map `u` of degree `+2`
/// satisfying `u^N = 0`. The degree-truncated negative cyclic complexes have
/// this shape.
#[derive(Clone, Debug)]
pub struct GradedUComplex<F> {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `d[i] : V_{lo+i} -> V_{lo+i+1}`; the last entry maps into zero.
    pub d: Vec<SparseMatrix<F>>,
    /// `u[i] : V_{lo+i} -> V_{lo+i+2}`.
    pub u: Vec<SparseMatrix<F>>,
    pub truncation: UTruncation,
}

impl<F: Scalar> GradedUComplex<F> {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    fn idx(&self, m: i64) -> Option<usize> {
        (m >= self.lo && m <= self.hi()).then(|| (m - self.lo) as usize)
    }

    /// `d² = 0` and `d u = u d`.
    pub fn check(&self) -> Result<()> {
        for i in 0..self.dims.len() {
            if i + 1 < self.dims.len() {
                let dd = self.d[i + 1].mul(&self.d[i])?;
                if let Some((r, c, v)) = dd.first_nonzero() {
                    return Err(NcgError::Contract(format!(
                        "d∘d nonzero in degree {}: entry {v} at ({r}, {c})",
                        self.lo + i as i64
                    )));
                }
            }
            if i + 3 < self.dims.len() {
                let du = self.d[i + 2].mul(&self.u[i])?;
                let ud = self.u[i + 1].mul(&self.d[i])?;
                if let Some((r, c, v)) = du.sub(&ud)?.first_nonzero() {
                    return Err(NcgError::Contract(format!(
                        "d∘u - u∘d nonzero in degree {}: entry {v} at ({r}, {c})",
                        self.lo + i as i64
                    )));
                }
            }
        }
        Ok(())
    }

    /// Decomposes homology into `u`-strings.
    pub fn strings(&self) -> Result<Vec<UString>> {
        self.check()?;
        let n = self.truncation.get();
        let len = self.dims.len();
        let cycles: Vec<Vec<SparseVec<F>>> = (0..len).map(|i| kernel_basis(&self.d[i])).collect();
        let boundaries: Vec<Echelon<F>> = (0..len)
            .map(|i| match i.checked_sub(1) {
                Some(q) => Echelon::from_vectors(self.d[q].columns().iter()),
                None => Echelon::new(),
            })
            .collect();
        // rank_u[i][j] = rank of u^j : H_{lo+i} -> H_{lo+i+2j}
        let mut rank_u: Vec<Vec<usize>> = vec![vec![0; n + 1]; len];
        for i in 0..len {
            let mut current = cycles[i].clone();
            let mut pos = i;
            for j in 0..=n {
                if pos >= len || current.is_empty() {
                    break;
                }
                let mut e = boundaries[pos].clone();
                let base = e.rank();
                for v in &current {
                    e.insert(v.clone());
                }
                rank_u[i][j] = e.rank() - base;
                if pos + 2 >= len {
                    break;
                }
                current = current
                    .iter()
                    .map(|v| self.u[pos].apply(v))
                    .filter(|v| !v.is_zero())
                    .collect();
                pos += 2;
            }
        }
        let r = |m: i64, j: usize| -> usize {
            match self.idx(m) {
                Some(i) if j <= n => rank_u[i][j],
                _ => 0,
            }
        };
        // strings starting at m with length >= l
        let starting = |m: i64, l: usize| -> usize {
            if l == 0 || l > n {
                return 0;
            }
            r(m, l - 1) - r(m - 2, l)
        };
        let mut out = Vec::new();
        for i in 0..len {
            let m = self.lo + i as i64;
            for l in 1..=n {
                let c = starting(m, l) - starting(m, l + 1);
                if c > 0 {
                    out.push(UString { start: m, length: l, multiplicity: c });
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn trunc(n: usize) -> UTruncation {
        UTruncation::new(n).unwrap()
    }

    #[test]
    fn zero_differentials_are_free() {
        let c = FreeUComplex::<Q>::new(trunc(3), vec![2], vec![]).unwrap();
        let rep = c.decompose().unwrap();
        assert_eq!(rep[0].free_rank, 2);
        assert!(rep[0].torsion_blocks.is_empty());
    }

    #[test]
    fn multiplication_by_u() {
        for n in 2..6 {
            let c = FreeUComplex::new(
                trunc(n),
                vec![1, 1],
                vec![vec![SparseMatrix::<Q>::zeros(1, 1), SparseMatrix::identity(1)]],
            )
            .unwrap();
            let rep = c.decompose().unwrap();
            assert_eq!(rep[0].torsion_blocks, vec![1], "kernel side, N={n}");
            assert_eq!(rep[1].torsion_blocks, vec![1], "cokernel side, N={n}");
            assert_eq!(rep[0].free_rank + rep[1].free_rank, 0);
            assert_eq!(rep.iter().all(|r| r.saturated_at_n), n > 2);
        }
    }

    #[test]
    fn multiplication_by_u_at_n1_is_zero_map() {
        let c = FreeUComplex::new(
            trunc(1),
            vec![1, 1],
            vec![vec![SparseMatrix::<Q>::zeros(1, 1), SparseMatrix::identity(1)]],
        )
        .unwrap();
        let rep = c.decompose().unwrap();
        assert_eq!(rep[0].free_rank, 1);
        assert_eq!(rep[1].free_rank, 1);
    }

    #[test]
    fn non_square_zero_is_reported() {
        let one = SparseMatrix::<Q>::identity(1);
        let c = FreeUComplex::new(trunc(2), vec![1, 1, 1], vec![vec![one.clone()], vec![one]])
            .unwrap();
        match c.decompose() {
            Err(NcgError::Contract(msg)) => assert!(msg.contains("(0, 0)"), "{msg}"),
            other => panic!("expected contract violation, got {other:?}"),
        }
    }

    #[test]
    fn graded_string_of_a_free_generator() {
        // V_0 = V_2 = V_4 = k, u the identity, d = 0
        let z = |r, c| SparseMatrix::<Q>::zeros(r, c);
        let one = SparseMatrix::<Q>::identity(1);
        let g = GradedUComplex {
            lo: 0,
            dims: vec![1, 0, 1, 0, 1],
            d: vec![z(0, 1), z(1, 0), z(0, 1), z(1, 0), z(0, 1)],
            u: vec![one.clone(), z(0, 0), one, z(0, 0), z(0, 1)],
            truncation: trunc(3),
        };
        let s = g.strings().unwrap();
        assert_eq!(s, vec![UString { start: 0, length: 3, multiplicity: 1 }]);
    }
}
