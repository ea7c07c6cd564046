use serde::Serialize;

use super::{folded_homology, NegativeCyclic};
use crate::algebra::Algebra;
use crate::error::{NcgError, Result};
use crate::exactlin::{rank, SparseMatrix};
use crate::hochschild::DegreeWindow;
use crate::scalar::{FieldDescriptor, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPSlot {
    pub weight: Option<i64>,
    pub parity: u8,
    /// Free rank with differential `∂ + uB`.
    pub periodic: usize,
    /// Free rank with `∂` alone, same weight.
    pub hochschild_same_weight: usize,
    /// Free rank with `∂` alone at weight `w / p` (zero unless `p | w`).
    pub hochschild_frobenius: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPComparison {
    pub algebra: String,
    pub field: FieldDescriptor,
    pub window: DegreeWindow,
    pub truncation: usize,
    pub slots: Vec<CharPSlot>,
    /// Every slot agrees after matching weight `w` with weight `w / p`.
    pub all_agree: bool,
    /// Every slot agrees at the same weight.
    pub all_agree_same_weight: bool,
}

fn free_at(nc: &NegativeCyclic, weight: Option<i64>, parity: u8) -> usize {
    nc.per_weight
        .iter()
        .find(|p| p.weight == weight)
        .map_or(0, |p| if parity == 0 { p.even.free_rank } else { p.odd.free_rank })
}

/// Free ranks of `(C[u]/u^N, ∂ + uB)` against `(C[u]/u^N, ∂)` over a prime
/// field, slot by slot. For weighted algebras the periodic side at weight `w`
/// is compared with the Hochschild side at weight `w / p`.
pub fn char_p_compare<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow, n: usize) -> Result<CharPComparison> {
    let p = F::characteristic();
    if p == 0 {
        return Err(NcgError::UnsupportedField(
            "the characteristic p comparison needs a prime field; over Q the localized complex is acyclic".into(),
        ));
    }
    let with_b = folded_homology(alg, window, n, true)?;
    let without = folded_homology(alg, window, n, false)?;
    let mut slots = Vec::new();
    for prof in &with_b.per_weight {
        for parity in [0u8, 1] {
            let w = prof.weight;
            let periodic = free_at(&with_b, w, parity);
            let same = free_at(&without, w, parity);
            let frob = match w {
                Some(x) if x.rem_euclid(p as i64) == 0 => free_at(&without, Some(x / p as i64), parity),
                Some(_) => 0,
                None => same,
            };
            slots.push(CharPSlot {
                weight: w,
                parity,
                periodic,
                hochschild_same_weight: same,
                hochschild_frobenius: frob,
                agree: periodic == frob,
            });
        }
    }
    Ok(CharPComparison {
        algebra: alg.name().to_string(),
        field: F::descriptor(),
        window: *window,
        truncation: n,
        all_agree: slots.iter().all(|s| s.agree),
        all_agree_same_weight: slots.iter().all(|s| s.periodic == s.hochschild_same_weight),
        slots,
    })
}

/// Homology of the 2-periodic complex `V^{⊗n} --(1-σ)--> V^{⊗n} --(1+σ+..+σ^{n-1})--> V^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieces {
    pub dim_v: usize,
    pub n: usize,
    pub field: FieldDescriptor,
    /// `ker(1 - σ) / im(N)`.
    pub ker_one_minus_sigma_mod_norm: usize,
    /// `ker(N) / im(1 - σ)`.
    pub ker_norm_mod_one_minus_sigma: usize,
}

impl GradedPieces {
    pub fn acyclic(&self) -> bool {
        self.ker_one_minus_sigma_mod_norm == 0 && self.ker_norm_mod_one_minus_sigma == 0
    }
}

/// The signed rotation on `V^{⊗n}`, `V` placed in odd degree:
/// `v1 ⊗ .. ⊗ vn ↦ (-1)^{n-1} vn ⊗ v1 ⊗ .. ⊗ v_{n-1}`.
fn sigma<F: Scalar>(dim_v: usize, n: usize) -> SparseMatrix<F> {
    let total = dim_v.pow(n as u32);
    let s = if n % 2 == 0 { -F::one() } else { F::one() };
    let trip = (0..total).map(|x| {
        // digits most significant first; rotate the last digit to the front
        let last = x % dim_v;
        let rest = x / dim_v;
        let y = last * dim_v.pow(n as u32 - 1) + rest;
        (y, x, s.clone())
    });
    SparseMatrix::from_triplets(total, total, trip).expect("indices in range")
}

fn pieces<F: Scalar>(dim_v: usize, n: usize) -> (usize, usize, usize) {
    let total = dim_v.pow(n as u32);
    let sg = sigma::<F>(dim_v, n);
    let id = SparseMatrix::<F>::identity(total);
    let one_minus = id.sub(&sg).expect("square");
    let mut norm = SparseMatrix::zeros(total, total);
    let mut power = id;
    for _ in 0..n {
        norm = norm.add(&power).expect("square");
        power = sg.mul(&power).expect("square");
    }
    (total, rank(&one_minus), rank(&norm))
}

fn check_sizes(dim_v: usize, n: usize) -> Result<()> {
    if dim_v < 1 || n < 1 {
        return Err(NcgError::InvalidParameter("graded pieces need dim V >= 1 and n >= 1".into()));
    }
    if (dim_v as f64).powi(n as i32) > 1e6 {
        return Err(NcgError::InvalidParameter(format!("V^(⊗{n}) with dim V = {dim_v} is too large")));
    }
    Ok(())
}

pub fn graded_piece_analysis(dim_v: usize, n: usize, field: FieldDescriptor) -> Result<GradedPieces> {
    check_sizes(dim_v, n)?;
    let (total, r1, rn) = crate::with_field!(field, F => Ok::<_, NcgError>(pieces::<F>(dim_v, n)))?;
    Ok(GradedPieces {
        dim_v,
        n,
        field,
        ker_one_minus_sigma_mod_norm: total - r1 - rn,
        ker_norm_mod_one_minus_sigma: total - rn - r1,
    })
}

/// `(dim ker, dim coker)` of `1 - σ` on `V^{⊗k}`.
pub fn two_term_piece(dim_v: usize, k: usize, field: FieldDescriptor) -> Result<(usize, usize)> {
    check_sizes(dim_v, k)?;
    let (total, r1, _) = crate::with_field!(field, F => Ok::<_, NcgError>(pieces::<F>(dim_v, k)))?;
    Ok((total - r1, total - r1))
}
