//! Polynomial differential forms on affine space, bivector contraction, the
//! Lie derivative `𝓛_α = [ι_α, d]` and the checks built from them.
//!
//! Variables are indexed from 0. A monomial form is `x^e dx_S` with `S` a
//! bitmask; `dx_S` is the wedge of the `dx_i`, `i ∈ S`, in increasing order.
//! Contraction follows `⟨∂_x ∧ ∂_y, dx ∧ dy⟩ = 1`, i.e. `ι_{∂i∧∂j} = ι_{∂j} ∘ ι_{∂i}`.

mod checks;
mod io;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{NcgError, Result};
use crate::scalar::Scalar;

pub use checks::{
    brylinski_check, conjugation_check, hodge_star, jacobi_check, monomial_forms, poisson_homology_ranks, star_identity_check,
    ConjugationReport, ConstantSymplectic, JacobiReport, PoissonHomology, StarReport,
};
pub use io::{bivector_builtin, bivector_from_json, bivector_to_json, form_from_json, BIVECTOR_CATALOGUE, BIVECTOR_FORMAT, FORM_FORMAT};

pub type Exponents = Vec<u32>;

/// `Σ c · x^e dx_S`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm<F> {
    vars: usize,
    terms: BTreeMap<(Exponents, u32), F>,
}

fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

impl<F: Scalar> PolyForm<F> {
    pub fn zero(vars: usize) -> Self {
        assert!(vars <= 31, "at most 31 variables");
        PolyForm { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: F) -> Self {
        Self::monomial(vars, vec![0; vars], 0, c)
    }

    pub fn monomial(vars: usize, exps: Exponents, mask: u32, c: F) -> Self {
        let mut f = Self::zero(vars);
        f.add_term(exps, mask, c);
        f
    }

    /// The coordinate function `x_i`.
    pub fn coordinate(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, e, 0, F::one())
    }

    /// `dx_i`.
    pub fn dx(vars: usize, i: usize) -> Self {
        Self::monomial(vars, vec![0; vars], 1 << i, F::one())
    }

    /// Builds a form from `(exponents, indices, coefficient)` triples; indices
    /// may come in any order and are sorted with the matching sign.
    pub fn from_terms(vars: usize, terms: Vec<(Exponents, Vec<usize>, F)>) -> Result<Self> {
        let mut f = Self::zero(vars);
        for (e, idx, c) in terms {
            if e.len() != vars || idx.iter().any(|&i| i >= vars) {
                return Err(NcgError::Structural(format!("term {e:?} dx{idx:?} does not fit {vars} variables")));
            }
            let mut mask = 0u32;
            let mut sign = false;
            for &i in &idx {
                if mask & (1 << i) != 0 {
                    mask = u32::MAX;
                    break;
                }
                sign ^= (mask >> i).count_ones() % 2 == 1;
                mask |= 1 << i;
            }
            if mask == u32::MAX {
                continue;
            }
            f.add_term(e, mask, if sign { -c } else { c });
        }
        Ok(f)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exps: Exponents, mask: u32, c: F) {
        if c.is_zero() {
            return;
        }
        let key = (exps, mask);
        let e = self.terms.entry(key.clone()).or_insert_with(F::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, u32, &F)> {
        self.terms.iter().map(|((e, m), c)| (e, *m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((e, m), c) in &other.terms {
            out.add_term(e.clone(), *m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e, m), c) in &self.terms {
            out.add_term(e.clone(), *m, c.clone() * s.clone());
        }
        out
    }

    /// Largest total exponent among the terms.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(e, _)| e.iter().sum()).max()
    }

    /// Form degrees present.
    pub fn form_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|(_, m)| m.count_ones()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The part of form degree `k`.
    pub fn part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e, m), c) in &self.terms {
            if m.count_ones() == k {
                out.add_term(e.clone(), *m, c.clone());
            }
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e1, m1), c1) in &self.terms {
            for ((e2, m2), c2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                // move each dx of the right factor past the larger ones of the left
                let swaps: u32 = (0..self.vars).filter(|&j| m2 & (1 << j) != 0).map(|j| (m1 >> j).count_ones()).sum();
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.clone() * c2.clone();
                out.add_term(e, m1 | m2, if swaps % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// `∂f/∂x_i`, applied to the coefficients.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e, m), c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, *m, c.clone() * F::from_i64(e[i] as i64));
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e, m), c) in &self.terms {
            for j in 0..self.vars {
                if e[j] == 0 || m & (1 << j) != 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] -= 1;
                let v = c.clone() * F::from_i64(e[j] as i64);
                out.add_term(e2, m | (1 << j), if below(*m, j) % 2 == 1 { -v } else { v });
            }
        }
        out
    }

    /// Contraction with `∂_k`.
    pub fn contract(&self, k: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for ((e, m), c) in &self.terms {
            if m & (1 << k) == 0 {
                continue;
            }
            let v = c.clone();
            out.add_term(e.clone(), m & !(1 << k), if below(*m, k) % 2 == 1 { -v } else { v });
        }
        out
    }

    /// Product with a function (a form of degree 0).
    pub fn times_function(&self, f: &Self) -> Self {
        f.wedge(self)
    }
}

impl<F: Scalar> fmt::Display for PolyForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((e, m), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})", crate::scalar::format_rational(&c.to_rational()))?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·x{i}")?,
                    _ => write!(f, "·x{i}^{p}")?,
                }
            }
            for i in 0..self.vars {
                if m & (1 << i) != 0 {
                    write!(f, "·dx{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for PolyForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `α = Σ_{i<j} α^{ij} ∂_i ∧ ∂_j` with polynomial coefficients, scaled by `ħ`
/// inside the Lie derivative.
#[derive(Clone, PartialEq, Eq)]
pub struct Bivector<F> {
    vars: usize,
    components: BTreeMap<(usize, usize), PolyForm<F>>,
    pub hbar: F,
}

impl<F: Scalar> Bivector<F> {
    pub fn zero(vars: usize) -> Self {
        Bivector { vars, components: BTreeMap::new(), hbar: F::one() }
    }

    /// Adds `f ∂_i ∧ ∂_j`; `i > j` is stored as `-f ∂_j ∧ ∂_i`.
    pub fn add_component(&mut self, i: usize, j: usize, f: PolyForm<F>) -> Result<()> {
        if i >= self.vars || j >= self.vars || f.vars() != self.vars {
            return Err(NcgError::Structural(format!("component ({i}, {j}) does not fit {} variables", self.vars)));
        }
        if !f.form_degrees().iter().all(|&k| k == 0) {
            return Err(NcgError::Structural("bivector coefficients must be functions".into()));
        }
        if i == j {
            return if f.is_zero() {
                Ok(())
            } else {
                Err(NcgError::Structural(format!("∂{i} ∧ ∂{i} = 0 cannot carry a coefficient")))
            };
        }
        let (key, f) = if i < j { ((i, j), f) } else { ((j, i), f.scale(&-F::one())) };
        let sum = match self.components.remove(&key) {
            Some(g) => g.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.components.insert(key, sum);
        }
        Ok(())
    }

    pub fn with_hbar(mut self, hbar: F) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &PolyForm<F>)> {
        self.components.iter()
    }

    /// `α^{ij}` for any order of `i, j`.
    pub fn component(&self, i: usize, j: usize) -> PolyForm<F> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.components.get(&(i, j)).cloned().unwrap_or_else(|| PolyForm::zero(self.vars)),
            std::cmp::Ordering::Greater => self.component(j, i).scale(&-F::one()),
            std::cmp::Ordering::Equal => PolyForm::zero(self.vars),
        }
    }

    /// Highest coefficient degree among the components (0 when `α = 0`).
    pub fn degree(&self) -> u32 {
        self.components.values().filter_map(|f| f.coefficient_degree()).max().unwrap_or(0)
    }

    /// `ι_α`, lowering form degree by 2.
    pub fn contract(&self, w: &PolyForm<F>) -> PolyForm<F> {
        let mut out = PolyForm::zero(self.vars);
        for ((i, j), f) in &self.components {
            let c = w.contract(*i).contract(*j);
            if !c.is_zero() {
                out = out.add(&c.times_function(f));
            }
        }
        out
    }

    /// `𝓛_α = ħ (ι_α ∘ d - d ∘ ι_α)`.
    pub fn lie_derivative(&self, w: &PolyForm<F>) -> PolyForm<F> {
        self.contract(&w.d()).sub(&self.contract(w).d()).scale(&self.hbar)
    }

    /// `{f, g} = Σ_{i<j} α^{ij} (∂_i f ∂_j g - ∂_j f ∂_i g)`.
    pub fn bracket(&self, f: &PolyForm<F>, g: &PolyForm<F>) -> PolyForm<F> {
        let mut out = PolyForm::zero(self.vars);
        for ((i, j), a) in &self.components {
            let t = f.partial(*i).wedge(&g.partial(*j)).sub(&f.partial(*j).wedge(&g.partial(*i)));
            out = out.add(&a.wedge(&t));
        }
        out
    }
}

impl<F: Scalar> fmt::Debug for Bivector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bivector(vars = {}", self.vars)?;
        for ((i, j), c) in &self.components {
            write!(f, ", [{c}] ∂{i}∧∂{j}")?;
        }
        write!(f, ", ħ = {})", crate::scalar::format_rational(&self.hbar.to_rational()))
    }
}

/// `exp(±ħ ι_α)`. Finite because `ι_α` lowers form degree.
pub fn exp_contract<F: Scalar>(alpha: &Bivector<F>, w: &PolyForm<F>, negative: bool) -> Result<PolyForm<F>> {
    let mut out = w.clone();
    let mut term = w.clone();
    let mut k = 1i64;
    loop {
        term = alpha.contract(&term).scale(&alpha.hbar);
        if term.is_zero() {
            return Ok(out);
        }
        let inv = F::from_i64(k).inv().ok_or_else(|| {
            NcgError::UnsupportedField(format!("exp(ι_α) needs 1/{k} in {}", F::descriptor()))
        })?;
        term = term.scale(&if negative { -inv } else { inv });
        out = out.add(&term);
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn plane() -> Bivector<Q> {
        let mut a = Bivector::zero(2);
        a.add_component(0, 1, PolyForm::constant(2, q(1))).unwrap();
        a
    }

    #[test]
    fn lie_derivative_fixtures() {
        let a = plane();
        let x = PolyForm::<Q>::coordinate(2, 0);
        let x_dy = x.wedge(&PolyForm::dx(2, 1));
        assert_eq!(a.lie_derivative(&x_dy), PolyForm::constant(2, q(1)));
        let x_dxdy = x.wedge(&PolyForm::dx(2, 0)).wedge(&PolyForm::dx(2, 1));
        assert_eq!(a.lie_derivative(&x_dxdy), PolyForm::dx(2, 0).scale(&q(-1)));
        let f = PolyForm::monomial(2, vec![2, 3], 0, q(5));
        assert!(a.lie_derivative(&f).is_zero());
    }

    #[test]
    fn brackets() {
        let a = plane();
        let (x, y) = (PolyForm::<Q>::coordinate(2, 0), PolyForm::<Q>::coordinate(2, 1));
        assert_eq!(a.bracket(&x, &y), PolyForm::constant(2, q(1)));
        let mut b = Bivector::zero(2);
        b.add_component(0, 1, x.wedge(&y)).unwrap();
        assert_eq!(b.bracket(&x, &y), x.wedge(&y));
    }

    #[test]
    fn d_squared_and_contraction_degree() {
        let w = PolyForm::from_terms(3, vec![(vec![2, 1, 0], vec![2], q(3)), (vec![0, 1, 3], vec![0, 1], q(-2))]).unwrap();
        assert!(w.d().d().is_zero());
        let mut a = Bivector::zero(3);
        a.add_component(2, 0, PolyForm::coordinate(3, 1)).unwrap();
        let top = PolyForm::<Q>::monomial(3, vec![1, 0, 0], 0b111, q(1));
        assert_eq!(a.contract(&top).form_degrees(), vec![1]);
    }

    #[test]
    fn wedge_signs() {
        let (dx, dy) = (PolyForm::<Q>::dx(2, 0), PolyForm::<Q>::dx(2, 1));
        assert_eq!(dy.wedge(&dx), dx.wedge(&dy).scale(&q(-1)));
        assert_eq!(PolyForm::from_terms(2, vec![(vec![0, 0], vec![1, 0], q(1))]).unwrap(), dy.wedge(&dx));
    }
}
