use std::collections::BTreeMap;

use serde::Serialize;

use super::UChain;
use crate::algebra::Algebra;
use crate::error::{NcgError, Result};
use crate::exactlin::{rank, Echelon, SparseMatrix, SparseVec};
use crate::hochschild::{boundary, connes_b, Chain, DegreeWindow};
use crate::scalar::Scalar;

/// `A/[A, A]` with a projection that writes each class in the complement basis.
struct Hh0Projector<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
    complement: Vec<usize>,
}

impl<F: Scalar> Hh0Projector<F> {
    fn new(alg: &Algebra<F>) -> Self {
        let mut e = Echelon::new();
        for i in 0..alg.dim() {
            for j in i..alg.dim() {
                e.insert(alg.supercommutator_basis(i, j));
            }
        }
        let rows = e.reduced_rows();
        let complement = (0..alg.dim()).filter(|c| !rows.contains_key(c)).collect();
        Hh0Projector { rows, complement }
    }

    /// Coordinates of the class of `v` on the complement basis.
    fn project(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut r = v.clone();
        for (c, row) in &self.rows {
            let x = r.get(*c);
            if !x.is_zero() {
                r = r.axpy(&-x, row);
            }
        }
        SparseVec::from_pairs(
            self.complement.iter().enumerate().map(|(k, &c)| (k, r.get(c))).filter(|(_, x)| !x.is_zero()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PPowerReport {
    pub p: u64,
    pub hh0_rank: usize,
    /// Basis indices whose classes form the basis of `HH_0` used for the matrix.
    pub basis: Vec<usize>,
    /// `matrix[i][j]`: coefficient of class `i` in the image of class `j`.
    pub matrix: Vec<Vec<u64>>,
    pub rank: usize,
    pub well_defined: bool,
    pub additive: bool,
    pub semilinear: bool,
    /// The square of the matrix is the matrix of `a ↦ a^{p²}`.
    pub square_is_p2_power: bool,
    pub witnesses: Vec<String>,
}

fn residue<F: Scalar>(x: &F) -> u64 {
    let r = x.to_rational();
    r.numer().to_string().parse::<i64>().map(|v| v.rem_euclid(F::characteristic() as i64) as u64).unwrap_or(0)
}

fn require_prime<F: Scalar>(alg: &Algebra<F>) -> Result<u64> {
    let p = F::characteristic();
    if p == 0 {
        return Err(NcgError::UnsupportedField("the p-power map needs a prime field".into()));
    }
    if alg.is_super() {
        return Err(NcgError::Unsupported(format!("the p-power map is not defined here for the super algebra {}", alg.name())));
    }
    Ok(p)
}

/// The class of `a^p` in `A/[A, A]`, on the complement basis.
pub fn ppower_class<F: Scalar>(alg: &Algebra<F>, a: &SparseVec<F>) -> Result<SparseVec<F>> {
    let p = require_prime(alg)?;
    Ok(Hh0Projector::new(alg).project(&alg.pow(a, p)))
}

/// Matrix of `a ↦ a^p` on `HH_0 = A/[A, A]` over `F_p`, with certificates.
pub fn ppower_on_hh0<F: Scalar>(alg: &Algebra<F>) -> Result<PPowerReport> {
    let p = require_prime(alg)?;
    let proj = Hh0Projector::new(alg);
    let d = alg.dim();
    let h = proj.complement.len();
    let image = |v: &SparseVec<F>| proj.project(&alg.pow(v, p));
    let columns: Vec<SparseVec<F>> = proj.complement.iter().map(|&j| image(&SparseVec::unit(j))).collect();
    let m = SparseMatrix::from_columns(h, &columns)?;
    let mut witnesses = Vec::new();

    let mut commutators = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let c = alg.commutator(&SparseVec::unit(a), &SparseVec::unit(b));
            if !c.is_zero() {
                commutators.push((a, b, c));
            }
        }
    }
    let mut well_defined = true;
    for (k, &j) in proj.complement.iter().enumerate() {
        for (a, b, c) in &commutators {
            if image(&SparseVec::unit(j).add(c)) != columns[k] {
                well_defined = false;
                witnesses.push(format!("(e{j} + [e{a}, e{b}])^p differs from e{j}^p mod commutators"));
            }
        }
    }
    for (a, b, c) in &commutators {
        if !image(c).is_zero() {
            well_defined = false;
            witnesses.push(format!("[e{a}, e{b}]^p is not a sum of commutators"));
        }
    }

    let mut additive = true;
    for a in 0..d {
        for b in a..d {
            let (ea, eb) = (SparseVec::unit(a), SparseVec::unit(b));
            if image(&ea.add(&eb)) != image(&ea).add(&image(&eb)) {
                additive = false;
                witnesses.push(format!("(e{a} + e{b})^p != e{a}^p + e{b}^p mod commutators"));
            }
        }
    }

    let mut semilinear = true;
    for a in 0..d {
        let ea = SparseVec::<F>::unit(a);
        for l in 2..p as i64 {
            let lam = F::from_i64(l);
            if image(&ea.scale(&lam)) != image(&ea).scale(&lam.pow(p)) {
                semilinear = false;
                witnesses.push(format!("({l} e{a})^p != {l}^p e{a}^p mod commutators"));
            }
        }
    }

    let p2_columns: Vec<SparseVec<F>> =
        proj.complement.iter().map(|&j| proj.project(&alg.pow(&SparseVec::unit(j), p * p))).collect();
    let m2 = SparseMatrix::from_columns(h, &p2_columns)?;
    let square_is_p2_power = m.mul(&m)? == m2;
    if !square_is_p2_power {
        witnesses.push("the square of the p-power matrix differs from the p²-power matrix".into());
    }

    Ok(PPowerReport {
        p,
        hh0_rank: h,
        basis: proj.complement.clone(),
        matrix: m.to_dense().iter().map(|row| row.iter().map(residue).collect()).collect(),
        rank: rank(&m),
        well_defined,
        additive,
        semilinear,
        square_is_p2_power,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport<F> {
    /// `a² + (1 ⊗ ā ⊗ ā) u` in the reduced basis.
    pub lift: UChain<F>,
    /// `(∂ + uB)` of the lift vanishes mod `u²`.
    pub cycle: bool,
}

/// The characteristic 2 lift of `a ↦ a²` to negative cyclic homology mod `u²`.
pub fn ppower_lift_p2<F: Scalar>(alg: &Algebra<F>, a: &SparseVec<F>) -> Result<LiftReport<F>> {
    if F::characteristic() != 2 {
        return Err(NcgError::InvalidParameter(format!(
            "the explicit lift is the p = 2 formula; the field is {}",
            F::descriptor()
        )));
    }
    let sq = alg.mul(a, a);
    let t0: Chain<F> = sq.iter().map(|(i, c)| (vec![*i], c.clone())).collect();
    let mut t1: Chain<F> = Chain::new();
    for (i, x) in a.iter().filter(|(i, _)| *i != 0) {
        for (j, y) in a.iter().filter(|(j, _)| *j != 0) {
            t1.insert(vec![0, *i, *j], x.clone() * y.clone());
        }
    }
    t1.retain(|_, v| !v.is_zero());
    let lift = UChain { terms: vec![t0, t1] };
    let cycle = lift.differential(alg).is_zero();
    Ok(LiftReport { lift, cycle })
}

/// The lift for general `p`. Only `p = 2` has explicit coefficients.
pub fn ppower_lift<F: Scalar>(alg: &Algebra<F>, a: &SparseVec<F>) -> Result<LiftReport<F>> {
    match F::characteristic() {
        2 => ppower_lift_p2(alg, a),
        0 => Err(NcgError::UnsupportedField("the p-power lift needs a prime field".into())),
        p => Err(NcgError::NotImplemented(format!(
            "lift for p = {p}: a^{p} + Σ c · a^(i0) ⊗ .. ⊗ a^(in) u^((n-1)/2) over even n with 2 <= n <= {} and \
             i0 + .. + in = {p}, plus ((p-1)/2)! a^(⊗{p}) u^{}; the middle coefficients are not known",
            p - 3,
            (p - 1) / 2
        ))),
    }
}

impl<F: Scalar> UChain<F> {
    /// Whether this degree-0 chain mod `u²` is `(∂ + uB)` of something, i.e.
    /// `t0 = ∂x0` and `t1 = Bx0 + ∂x1` for some `x0 ∈ C_1`, `x1 ∈ C_3`.
    pub fn is_boundary_mod_u2(&self, alg: &Algebra<F>) -> Result<bool> {
        if self.terms.len() != 2 || self.terms[0].keys().any(|w| w.len() != 1) || self.terms[1].keys().any(|w| w.len() != 3) {
            return Err(NcgError::Structural("expected a chain in C_0 + C_2·u".into()));
        }
        let w = |n| DegreeWindow::new(n);
        let d1 = boundary(alg, 1, &w(1))?;
        let b1 = connes_b(alg, 1, &w(1))?;
        let d3 = boundary(alg, 3, &w(3))?;
        let c0 = d1.rows();
        let c2 = d3.rows();
        let c1 = d1.cols();
        // columns: generators of C_1 then C_3; rows: C_0 then C_2
        let mut cols: Vec<SparseVec<F>> = Vec::with_capacity(c1 + d3.cols());
        let d1c = d1.columns();
        let b1c = b1.columns();
        for j in 0..c1 {
            let top = d1c[j].clone();
            let bottom = b1c[j].remap(|i| i + c0);
            cols.push(top.add(&bottom));
        }
        for col in d3.columns() {
            cols.push(col.remap(|i| i + c0));
        }
        let e = Echelon::from_vectors(cols.iter());
        let basis0 = crate::hochschild::chain_basis(alg, 0, &w(0))?;
        let basis2 = crate::hochschild::chain_basis(alg, 2, &w(2))?;
        let pos = |b: &[Vec<usize>], word: &[usize]| b.iter().position(|x| x == word);
        let mut target = Vec::new();
        for (word, c) in &self.terms[0] {
            target.push((pos(&basis0, word).ok_or_else(|| NcgError::Structural("word not in C_0".into()))?, c.clone()));
        }
        for (word, c) in &self.terms[1] {
            let i = pos(&basis2, word).ok_or_else(|| NcgError::Structural(format!("word {word:?} not in C_2")))?;
            target.push((c0 + i, c.clone()));
        }
        debug_assert!(target.iter().all(|(i, _)| *i < c0 + c2));
        Ok(e.contains(&SparseVec::from_pairs(target)))
    }
}
