//! Chern characters of idempotents in negative cyclic homology, and the
//! Frobenius-type power map `a ↦ a^p` on `HH_0` in characteristic `p`.

mod ppower;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_algebra_ref, Algebra, AlgebraRef};
use crate::error::{NcgError, Result};
use crate::exactlin::{Echelon, SparseVec};
use crate::hochschild::{boundary_chain, connes_chain, Chain, Word};
use crate::scalar::{format_rational, parse_rational, Scalar};

pub use ppower::{ppower_class, ppower_lift, ppower_lift_p2, ppower_on_hh0, LiftReport, PPowerReport};

/// A chain of the negative cyclic complex mod `u^N`: `terms[k]` is the `u^k` coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChain<F> {
    pub terms: Vec<Chain<F>>,
}

impl<F: Scalar> UChain<F> {
    /// `(∂ + uB)` applied and truncated mod `u^N`, `N = terms.len()`.
    pub fn differential(&self, alg: &Algebra<F>) -> UChain<F> {
        let n = self.terms.len();
        let mut out: Vec<Chain<F>> = self.terms.iter().map(|c| boundary_chain(alg, c)).collect();
        for k in 0..n.saturating_sub(1) {
            for (w, x) in connes_chain(alg, &self.terms[k]) {
                let e = out[k + 1].entry(w).or_insert_with(F::zero);
                *e += x;
            }
            out[k + 1].retain(|_, v| !v.is_zero());
        }
        UChain { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|c| c.is_empty())
    }

    pub fn sub(&self, other: &UChain<F>) -> UChain<F> {
        let terms = self
            .terms
            .iter()
            .zip(&other.terms)
            .map(|(a, b)| {
                let mut c = a.clone();
                for (w, x) in b {
                    let e = c.entry(w.clone()).or_insert_with(F::zero);
                    *e -= x.clone();
                }
                c.retain(|_, v| !v.is_zero());
                c
            })
            .collect();
        UChain { terms }
    }

    /// Words with coefficients as strings, per power of `u`.
    pub fn describe(&self) -> Vec<Vec<(Word, String)>> {
        self.terms
            .iter()
            .map(|c| c.iter().map(|(w, x)| (w.clone(), format_rational(&x.to_rational()))).collect())
            .collect()
    }
}

/// `π` with `π² = π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent<F> {
    pub element: SparseVec<F>,
}

impl<F: Scalar> Idempotent<F> {
    pub fn new(alg: &Algebra<F>, element: SparseVec<F>) -> Result<Self> {
        if element.max_index().is_some_and(|i| i >= alg.dim()) {
            return Err(NcgError::Structural(format!("element has an index beyond dimension {}", alg.dim())));
        }
        if !alg.is_idempotent(&element) {
            return Err(NcgError::Contract("element is not idempotent: π·π != π".into()));
        }
        Ok(Idempotent { element })
    }
}

/// Tensor words of `x0 ⊗ y ⊗ .. ⊗ y` (`len` copies of `y`), with every tail
/// factor taken modulo the unit.
fn tensor_word<F: Scalar>(x0: &SparseVec<F>, y: &SparseVec<F>, len: usize) -> Chain<F> {
    let tail: Vec<(usize, F)> = y.iter().filter(|(i, _)| *i != 0).cloned().collect();
    let mut acc: Vec<(Word, F)> = x0.iter().map(|(i, c)| (vec![*i], c.clone())).collect();
    for _ in 0..len {
        let mut next = Vec::with_capacity(acc.len() * tail.len());
        for (w, c) in &acc {
            for (i, d) in &tail {
                let mut w2 = w.clone();
                w2.push(*i);
                next.push((w2, c.clone() * d.clone()));
            }
        }
        acc = next;
    }
    let mut out = Chain::new();
    for (w, c) in acc {
        let e = out.entry(w).or_insert_with(F::zero);
        *e += c;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernCharacter<F> {
    pub chain: UChain<F>,
    /// `(∂ + uB) ch ≡ 0 mod u^N`, checked on construction.
    pub cycle: bool,
    /// The `u^0` term is not a sum of commutators, so its `HH_0` class is nonzero.
    pub hh0_nonzero: bool,
}

/// `ch(π) = Σ_{k<N} (-1)^k (2k)!/k! (π - 1/2) ⊗ π^{⊗2k} u^k`, with the
/// `k = 0` term equal to `π`.
pub fn chern_idempotent<F: Scalar>(alg: &Algebra<F>, pi: &Idempotent<F>, n: usize) -> Result<ChernCharacter<F>> {
    if n == 0 {
        return Err(NcgError::InvalidParameter("u-truncation N must be >= 1".into()));
    }
    let p = F::characteristic();
    if p != 0 && p <= 2 * n as u64 {
        return Err(NcgError::UnsupportedField(format!(
            "the Chern character mod u^{n} needs characteristic 0 or p > {}, got {p}",
            2 * n
        )));
    }
    let pi_v = &pi.element;
    let half = F::from_i64(2).inv().expect("2 is invertible");
    let shifted = pi_v.sub(&alg.scalar(half));
    let mut terms = Vec::with_capacity(n);
    terms.push(tensor_word(pi_v, &SparseVec::zero(), 0));
    let mut coeff = F::one();
    for k in 1..n {
        // (2k)!/k! = (2k-1)!/(k-1)! * (2k)(2k-1)/k = prev * 2(2k-1)
        coeff = coeff * F::from_i64(-2 * (2 * k as i64 - 1));
        let mut c = tensor_word(&shifted, pi_v, 2 * k);
        for v in c.values_mut() {
            *v = v.clone() * coeff.clone();
        }
        c.retain(|_, v| !v.is_zero());
        terms.push(c);
    }
    let chain = UChain { terms };
    let cycle = chain.differential(alg).is_zero();
    if !cycle {
        return Err(NcgError::Contract(format!(
            "the Chern character of this idempotent in {} is not a cycle mod u^{n}",
            alg.name()
        )));
    }
    let mut commutators = Echelon::new();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            commutators.insert(alg.supercommutator_basis(i, j));
        }
    }
    let hh0_nonzero = !commutators.contains(pi_v);
    Ok(ChernCharacter { chain, cycle, hh0_nonzero })
}

/// Idempotents `Σ c_i e_i` with `c_i ∈ {-1, 0, 1}`, for sweeps over small algebras.
pub fn scan_idempotents<F: Scalar>(alg: &Algebra<F>) -> Result<Vec<SparseVec<F>>> {
    let d = alg.dim();
    if d > 10 {
        return Err(NcgError::InvalidParameter(format!("idempotent scan is limited to dimension 10, got {d}")));
    }
    let mut out = Vec::new();
    for code in 0..3usize.pow(d as u32) {
        let mut x = code;
        let mut pairs = Vec::new();
        for i in 0..d {
            match x % 3 {
                1 => pairs.push((i, F::one())),
                2 => pairs.push((i, -F::one())),
                _ => {}
            }
            x /= 3;
        }
        let v = SparseVec::from_pairs(pairs);
        if alg.is_idempotent(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

pub const IDEMPOTENT_FORMAT: &str = "ncg-idempotent/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdempotentFile {
    format: String,
    /// An algebra reference: a catalogue name with parameters, or a file path.
    algebra: String,
    coefficients: Vec<String>,
}

/// Parses an idempotent file into its algebra reference and rational coefficients.
pub fn idempotent_from_json(text: &str) -> Result<(AlgebraRef, Vec<BigRational>)> {
    let f: IdempotentFile = serde_json::from_str(text).map_err(|e| NcgError::Schema(e.to_string()))?;
    if f.format != IDEMPOTENT_FORMAT {
        return Err(NcgError::Schema(format!("expected format {IDEMPOTENT_FORMAT:?}, got {:?}", f.format)));
    }
    let coeffs = f
        .coefficients
        .iter()
        .map(|c| parse_rational(c).map_err(|e| NcgError::Schema(e.to_string())))
        .collect::<Result<_>>()?;
    Ok((parse_algebra_ref(&f.algebra)?, coeffs))
}

pub fn idempotent_to_json(algebra: &str, coefficients: &[BigRational]) -> String {
    let f = IdempotentFile {
        format: IDEMPOTENT_FORMAT.into(),
        algebra: algebra.into(),
        coefficients: coefficients.iter().map(format_rational).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializes")
}

/// Realizes rational coefficients as an element over `F`.
pub fn element_from_rationals<F: Scalar>(coefficients: &[BigRational]) -> Result<SparseVec<F>> {
    let pairs = coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| {
            F::from_rational(c)
                .map(|x| (i, x))
                .ok_or_else(|| NcgError::UnsupportedField(format!("coefficient {c} is not defined over {}", F::descriptor())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{F3, Q};

    fn alg<F: Scalar>(r: &str) -> Algebra<F> {
        let spec = parse_algebra_ref(r).unwrap().resolve(Some(F::descriptor())).unwrap();
        Algebra::from_spec(&spec).unwrap()
    }

    #[test]
    fn unit_and_zero() {
        let m2 = alg::<Q>("mat:m=2");
        let one = Idempotent::new(&m2, m2.unit()).unwrap();
        let ch = chern_idempotent(&m2, &one, 3).unwrap();
        assert_eq!(ch.chain.terms[0].len(), 1);
        assert!(ch.chain.terms[1..].iter().all(|t| t.is_empty()));
        let zero = Idempotent::new(&m2, SparseVec::zero()).unwrap();
        assert!(chern_idempotent(&m2, &zero, 3).unwrap().chain.is_zero());
    }

    #[test]
    fn e11_in_mat2() {
        let m2 = alg::<Q>("mat:m=2");
        let e11 = Idempotent::new(&m2, SparseVec::unit(1)).unwrap();
        let ch = chern_idempotent(&m2, &e11, 3).unwrap();
        assert!(ch.cycle && ch.hh0_nonzero);
        assert!(!ch.chain.terms[2].is_empty());
    }

    #[test]
    fn contracts() {
        let m2 = alg::<Q>("mat:m=2");
        assert!(matches!(Idempotent::new(&m2, SparseVec::unit(2)), Err(NcgError::Contract(_))));
        let m2f3 = alg::<F3>("mat:m=2");
        let e11 = Idempotent::new(&m2f3, SparseVec::unit(1)).unwrap();
        assert!(matches!(chern_idempotent(&m2f3, &e11, 2), Err(NcgError::UnsupportedField(_))));
        assert!(chern_idempotent(&m2f3, &e11, 1).is_ok());
    }

    #[test]
    fn scanned_idempotents_of_mat3_are_cycles() {
        let m3 = alg::<Q>("mat:m=3");
        let all = scan_idempotents(&m3).unwrap();
        assert!(all.len() >= 8);
        for v in all {
            let pi = Idempotent::new(&m3, v).unwrap();
            assert!(chern_idempotent(&m3, &pi, 3).unwrap().cycle);
        }
    }
}
