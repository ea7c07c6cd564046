use std::collections::BTreeMap;

use serde::Serialize;

use super::{DegreeWindow, HochschildComplex};
use crate::algebra::Algebra;
use crate::error::{NcgError, Result};
use crate::exactlin::{rank, Echelon, SparseVec};
use crate::scalar::{FieldDescriptor, Scalar};

/// Weights within this distance of a truncation cutoff are reported but not trusted.
pub const GUARD_BAND: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhEntry {
    pub n: usize,
    /// Degree in the homological convention, `-n`.
    pub degree: i64,
    pub weight: Option<i64>,
    pub rank: usize,
    /// False for weights inside the guard band of a truncated algebra.
    pub trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhTable {
    pub algebra: String,
    pub field: FieldDescriptor,
    pub window: DegreeWindow,
    pub entries: Vec<HhEntry>,
}

impl HhTable {
    /// Total rank in tensor degree `n`, over all reported weights.
    pub fn total(&self, n: usize) -> usize {
        self.entries.iter().filter(|e| e.n == n).map(|e| e.rank).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.window.n_max).map(|n| self.total(n)).collect()
    }

    pub fn rank(&self, n: usize, weight: Option<i64>) -> usize {
        self.entries.iter().filter(|e| e.n == n && e.weight == weight).map(|e| e.rank).sum()
    }
}

/// Hochschild homology ranks for tensor degrees `0..=n_max`, per weight
/// when the algebra is weighted.
pub fn hh_ranks<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow) -> Result<HhTable> {
    let cx = HochschildComplex::new(alg, window.n_max + 1, window.weights)?;
    let mut acc: BTreeMap<(usize, Option<i64>), usize> = BTreeMap::new();
    for s in cx.sectors() {
        let ranks: Vec<usize> =
            (0..=window.n_max + 1).map(|n| cx.boundary(n, s).map(|m| rank(&m))).collect::<Result<_>>()?;
        for n in 0..=window.n_max {
            let dim = cx.dim(n, s);
            if dim == 0 {
                continue;
            }
            *acc.entry((n, s.weight)).or_default() += dim - ranks[n] - ranks[n + 1];
        }
    }
    let trusted = |w: Option<i64>| match (w, alg.weight_cutoff()) {
        (Some(w), Some(c)) => w <= c - GUARD_BAND,
        _ => true,
    };
    let mut entries: Vec<HhEntry> = acc
        .into_iter()
        .map(|((n, weight), rank)| HhEntry { n, degree: -(n as i64), weight, rank, trusted: trusted(weight) })
        .collect();
    for n in 0..=window.n_max {
        if !entries.iter().any(|e| e.n == n) && alg.weights().is_none() {
            entries.push(HhEntry { n, degree: -(n as i64), weight: None, rank: 0, trusted: true });
        }
    }
    entries.sort_by_key(|e| (e.n, e.weight));
    Ok(HhTable { algebra: alg.name().to_string(), field: F::descriptor(), window: *window, entries })
}

/// `A/[A, A]` computed from the (super)commutator span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hh0 {
    pub rank: usize,
    /// Basis indices whose classes form a basis of the quotient.
    pub complement: Vec<usize>,
}

pub fn hh0_direct<F: Scalar>(alg: &Algebra<F>) -> Hh0 {
    let d = alg.dim();
    let mut e = Echelon::new();
    for i in 0..d {
        for j in i..d {
            e.insert(alg.supercommutator_basis(i, j));
        }
    }
    let pivots: Vec<usize> = e.pivot_columns().collect();
    let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    Hh0 { rank: complement.len(), complement }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomial `i`-forms `f dx_J` of total weight `w` in `v`
/// variables (each `dx` has weight 1); the HKR prediction in characteristic 0.
pub fn hkr_reference(v: usize, i: usize, w: i64, field: FieldDescriptor) -> Result<usize> {
    if field.characteristic() != 0 {
        return Err(NcgError::Unsupported(format!(
            "the HKR comparison is only made in characteristic 0, not over {field}"
        )));
    }
    if i > v || w < i as i64 {
        return Ok(0);
    }
    let rest = (w - i as i64) as u64;
    let monomials = if v == 0 { u64::from(rest == 0) } else { binomial(rest + v as u64 - 1, v as u64 - 1) };
    Ok((binomial(v as u64, i as u64) * monomials) as usize)
}

impl<F: Scalar> Algebra<F> {
    /// `e_i e_j - (-1)^{|i||j|} e_j e_i`.
    pub fn supercommutator_basis(&self, i: usize, j: usize) -> SparseVec<F> {
        let ij = self.basis_product(i, j);
        let ji = self.basis_product(j, i);
        if self.parity(i) * self.parity(j) == 1 {
            ij.add(ji)
        } else {
            ij.sub(ji)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra_ref;
    use crate::scalar::Q;

    fn alg(r: &str) -> Algebra<Q> {
        Algebra::from_spec(&parse_algebra_ref(r).unwrap().resolve(None).unwrap()).unwrap()
    }

    #[test]
    fn small_tables() {
        assert_eq!(hh_ranks(&alg("point"), &DegreeWindow::new(4)).unwrap().totals(), vec![1, 0, 0, 0, 0]);
        assert_eq!(hh_ranks(&alg("dual_numbers"), &DegreeWindow::new(4)).unwrap().totals(), vec![2, 1, 1, 1, 1]);
        assert_eq!(hh_ranks(&alg("mat:m=2"), &DegreeWindow::new(4)).unwrap().totals(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn hh0_examples() {
        assert_eq!(hh0_direct(&alg("mat:m=2")).rank, 1);
        assert_eq!(hh0_direct(&alg("a2_path")).rank, 2);
        assert_eq!(hh0_direct(&alg("truncated_poly:m=4")).rank, 4);
        assert_eq!(hh0_direct(&alg("clifford1")).rank, 1);
    }

    #[test]
    fn hkr_counts() {
        let q = FieldDescriptor::Rationals;
        for d in 0..6 {
            assert_eq!(hkr_reference(1, 0, d, q).unwrap(), 1);
        }
        assert_eq!(hkr_reference(2, 1, 1, q).unwrap(), 2);
        assert_eq!(hkr_reference(2, 2, 2, q).unwrap(), 1);
        assert_eq!(hkr_reference(2, 3, 5, q).unwrap(), 0);
        assert!(hkr_reference(1, 0, 0, FieldDescriptor::Prime(3)).is_err());
    }
}
