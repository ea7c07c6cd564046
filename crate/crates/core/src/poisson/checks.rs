use serde::Serialize;

use super::{exp_contract, Bivector, Exponents, PolyForm};
use crate::error::{NcgError, Result};
use crate::exactlin::{column_space, kernel_basis, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Exponent vectors of total degree `<= d`, graded then lexicographic.
fn exponents(vars: usize, d: u32) -> Vec<Exponents> {
    fn rec(prefix: &mut Exponents, left: usize, budget: u32, out: &mut Vec<Exponents>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(prefix, left - 1, budget - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), vars, d, &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    out
}

/// Every `x^e dx_S` with `|e| <= d`.
pub fn monomial_forms<F: Scalar>(vars: usize, d: u32) -> Vec<PolyForm<F>> {
    let mut out = Vec::new();
    for e in exponents(vars, d) {
        for mask in 0..(1u32 << vars) {
            out.push(PolyForm::monomial(vars, e.clone(), mask, F::one()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiWitness {
    pub f: String,
    pub g: String,
    pub h: String,
    pub jacobiator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub passes: bool,
    pub triples_checked: usize,
    pub witness: Option<JacobiWitness>,
}

fn jacobiator<F: Scalar>(a: &Bivector<F>, f: &PolyForm<F>, g: &PolyForm<F>, h: &PolyForm<F>) -> PolyForm<F> {
    a.bracket(f, &a.bracket(g, h)).add(&a.bracket(g, &a.bracket(h, f))).add(&a.bracket(h, &a.bracket(f, g)))
}

/// Jacobiator on all coordinate triples, then on all triples of distinct
/// monomials of degree `<= d`. Stops at the first nonzero value.
pub fn jacobi_check<F: Scalar>(a: &Bivector<F>, d: u32) -> JacobiReport {
    let v = a.vars();
    let coords: Vec<PolyForm<F>> = (0..v).map(|i| PolyForm::coordinate(v, i)).collect();
    let monos: Vec<PolyForm<F>> = exponents(v, d).into_iter().map(|e| PolyForm::monomial(v, e, 0, F::one())).collect();
    let mut checked = 0;
    for set in [&coords, &monos] {
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                for k in j + 1..set.len() {
                    checked += 1;
                    let jac = jacobiator(a, &set[i], &set[j], &set[k]);
                    if !jac.is_zero() {
                        return JacobiReport {
                            passes: false,
                            triples_checked: checked,
                            witness: Some(JacobiWitness {
                                f: set[i].to_string(),
                                g: set[j].to_string(),
                                h: set[k].to_string(),
                                jacobiator: jac.to_string(),
                            }),
                        };
                    }
                }
            }
        }
    }
    JacobiReport { passes: true, triples_checked: checked, witness: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormWitness {
    pub form: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub passes: bool,
    pub forms_checked: usize,
    pub witness: Option<FormWitness>,
}

fn compare_on<F: Scalar>(
    forms: &[PolyForm<F>],
    left: impl Fn(&PolyForm<F>) -> Result<PolyForm<F>>,
    right: impl Fn(&PolyForm<F>) -> Result<PolyForm<F>>,
) -> Result<(bool, usize, Option<FormWitness>)> {
    for (n, w) in forms.iter().enumerate() {
        let (l, r) = (left(w)?, right(w)?);
        if l != r {
            let witness = FormWitness { form: w.to_string(), left: l.to_string(), right: r.to_string() };
            return Ok((false, n + 1, Some(witness)));
        }
    }
    Ok((true, forms.len(), None))
}

/// `exp(ι_α) ∘ d ∘ exp(-ι_α) = d + 𝓛_α` on every monomial form of coefficient degree `<= d`.
pub fn conjugation_check<F: Scalar>(a: &Bivector<F>, d: u32) -> Result<ConjugationReport> {
    let forms = monomial_forms::<F>(a.vars(), d);
    let (passes, forms_checked, witness) = compare_on(
        &forms,
        |w| exp_contract(a, &exp_contract(a, w, true)?.d(), false),
        |w| Ok(w.d().add(&a.lie_derivative(w))),
    )?;
    Ok(ConjugationReport { passes, forms_checked, witness })
}

/// `(𝓛 d + d 𝓛 = 0, 𝓛² = 0)` on every monomial form of coefficient degree `<= d`.
pub fn brylinski_check<F: Scalar>(a: &Bivector<F>, d: u32) -> (bool, bool) {
    let forms = monomial_forms::<F>(a.vars(), d);
    let anti = forms.iter().all(|w| a.lie_derivative(&w.d()).add(&a.lie_derivative(w).d()).is_zero());
    let square = forms.iter().all(|w| a.lie_derivative(&a.lie_derivative(w)).is_zero());
    (anti, square)
}

/// `ω = Σ dx_i ∧ dy_i` on `2n` variables, with `x_i = 2i` and `y_i = 2i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantSymplectic {
    pub pairs: usize,
}

impl ConstantSymplectic {
    pub fn new(pairs: usize) -> Self {
        ConstantSymplectic { pairs }
    }

    /// Recognizes the standard form; any polynomial coefficient is unsupported.
    pub fn from_form<F: Scalar>(w: &PolyForm<F>) -> Result<Self> {
        if w.coefficient_degree().is_some_and(|k| k > 0) {
            return Err(NcgError::Unsupported("only constant symplectic forms are supported".into()));
        }
        if w.vars() % 2 != 0 {
            return Err(NcgError::Structural(format!("a symplectic form needs an even dimension, got {}", w.vars())));
        }
        let s = ConstantSymplectic::new(w.vars() / 2);
        if *w != s.omega() {
            return Err(NcgError::Unsupported("only the standard form Σ dx_i ∧ dy_i is supported".into()));
        }
        Ok(s)
    }

    pub fn vars(&self) -> usize {
        2 * self.pairs
    }

    pub fn omega<F: Scalar>(&self) -> PolyForm<F> {
        let v = self.vars();
        let mut w = PolyForm::zero(v);
        for i in 0..self.pairs {
            w.add_term(vec![0; v], 0b11 << (2 * i), F::one());
        }
        w
    }

    /// `α = ω^{-1} = Σ ∂x_i ∧ ∂y_i`, so `⟨α, ω⟩` pairs each `dx_i ∧ dy_i` to 1.
    pub fn alpha<F: Scalar>(&self) -> Bivector<F> {
        let v = self.vars();
        let mut a = Bivector::zero(v);
        for i in 0..self.pairs {
            a.add_component(2 * i, 2 * i + 1, PolyForm::constant(v, F::one())).expect("in range");
        }
        a
    }
}

/// Odd-variable Fourier transform, pair by pair:
/// `1 ↦ dx∧dy`, `dx∧dy ↦ top_sign`, `dx ↦ dx`, `dy ↦ dy`.
fn star_with_sign<F: Scalar>(w: &PolyForm<F>, pairs: usize, top_sign: &F) -> PolyForm<F> {
    let mut out = PolyForm::zero(w.vars());
    for (e, mask, c) in w.terms() {
        let mut m = mask;
        let mut c = c.clone();
        for i in 0..pairs {
            let pair = 0b11 << (2 * i);
            match mask & pair {
                0 => m |= pair,
                x if x == pair => {
                    m &= !pair;
                    c = c * top_sign.clone();
                }
                _ => {}
            }
        }
        // each pair map preserves the parity of that pair, so no reordering signs
        out.add_term(e.clone(), m, c);
    }
    out
}

/// The Hodge star of `ω`, with `*(dx∧dy) = -1`.
pub fn hodge_star<F: Scalar>(w: &PolyForm<F>, omega: &ConstantSymplectic) -> Result<PolyForm<F>> {
    if w.vars() != omega.vars() {
        return Err(NcgError::Structural(format!("form on {} variables, ω on {}", w.vars(), omega.vars())));
    }
    Ok(star_with_sign(w, omega.pairs, &-F::one()))
}

fn exp_wedge<F: Scalar>(omega: &PolyForm<F>, w: &PolyForm<F>) -> Result<PolyForm<F>> {
    let mut out = w.clone();
    let mut term = w.clone();
    let mut k = 1i64;
    loop {
        term = omega.wedge(&term);
        if term.is_zero() {
            return Ok(out);
        }
        let inv = F::from_i64(k)
            .inv()
            .ok_or_else(|| NcgError::UnsupportedField(format!("exp(ω∧) needs 1/{k} in {}", F::descriptor())))?;
        term = term.scale(&inv);
        out = out.add(&term);
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub pairs: usize,
    pub degree_bound: u32,
    pub forms_checked: usize,
    /// `e^{ω∧} = e^{ι_α} ∘ * ∘ e^{-ι_α}` with `*(dx∧dy) = -1`.
    pub literal_passes: bool,
    pub literal_witness: Option<FormWitness>,
    /// The same identity with `*(dx∧dy) = +1`.
    pub literal_passes_other_sign: bool,
    /// `e^{ω∧} = e^{ι_α} ∘ * ∘ e^{ι_α}` with `*(dx∧dy) = -1`.
    pub symmetric_passes: bool,
    pub symmetric_witness: Option<FormWitness>,
}

impl StarReport {
    pub fn passes(&self) -> bool {
        self.literal_passes
    }
}

/// Checks the star identity on every monomial form of coefficient degree `<= d`.
///
/// The conjugated form `e^{ι} * e^{-ι}` cannot equal the unipotent `e^{ω∧}`
/// for any involutive-up-to-sign `*`, so it is expected to fail for either
/// sign of `*(dx∧dy)`; the symmetric form `e^{ι} * e^{ι}` is checked alongside.
pub fn star_identity_check<F: Scalar>(omega: &ConstantSymplectic, d: u32) -> Result<StarReport> {
    let v = omega.vars();
    let forms = monomial_forms::<F>(v, d);
    let w = omega.omega::<F>();
    let a = omega.alpha::<F>();
    let lhs = |x: &PolyForm<F>| exp_wedge(&w, x);
    let conj = |sign: F, second_negative: bool| {
        let a = &a;
        move |x: &PolyForm<F>| {
            let inner = exp_contract(a, x, second_negative)?;
            exp_contract(a, &star_with_sign(&inner, omega.pairs, &sign), false)
        }
    };
    let (literal_passes, n, literal_witness) = compare_on(&forms, lhs, conj(-F::one(), true))?;
    let (other, _, _) = compare_on(&forms, lhs, conj(F::one(), true))?;
    let (symmetric_passes, m, symmetric_witness) = compare_on(&forms, lhs, conj(-F::one(), false))?;
    Ok(StarReport {
        pairs: omega.pairs,
        degree_bound: d,
        forms_checked: n.max(m),
        literal_passes,
        literal_witness,
        literal_passes_other_sign: other,
        symmetric_passes,
        symmetric_witness,
    })
}

/// Ranks of the folded complex `(Ω, d + 𝓛_α)` per total parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonHomology {
    pub vars: usize,
    pub degree_bound: u32,
    pub guard_band: u32,
    /// Image of `H(F_{D-g}) → H(F_D)`, even and odd form degree.
    pub even: usize,
    pub odd: usize,
    /// Homology of the truncated space `F_D` itself, including cutoff artefacts.
    pub truncated_even: usize,
    pub truncated_odd: usize,
}

/// `F_D` (forms with coefficient degree `<= D`) is a subcomplex when `deg α <= 1`.
/// Classes are counted as stable when they come from `F_{D-g}`, `g = max(2, deg α)`.
pub fn poisson_homology_ranks<F: Scalar>(a: &Bivector<F>, d: u32) -> Result<PoissonHomology> {
    let deg = a.degree();
    if deg >= 2 {
        return Err(NcgError::Unsupported(format!(
            "bivectors of coefficient degree {deg} do not preserve the degree filtration; only degree <= 1 is supported"
        )));
    }
    let jac = jacobi_check(a, 1);
    if !jac.passes {
        return Err(NcgError::Contract("the bivector fails the Jacobi identity, so d + 𝓛_α does not square to zero".into()));
    }
    let guard = deg.max(2);
    if d < guard {
        return Err(NcgError::InvalidParameter(format!("degree bound {d} is below the guard band {guard}")));
    }
    let v = a.vars();
    let forms = monomial_forms::<F>(v, d);
    // index by parity
    let mut index: [Vec<(Exponents, u32)>; 2] = [Vec::new(), Vec::new()];
    for w in &forms {
        let (e, m, _) = w.terms().next().expect("monomial");
        index[(m.count_ones() % 2) as usize].push((e.clone(), m));
    }
    let lookup: [std::collections::HashMap<(Exponents, u32), usize>; 2] =
        [0, 1].map(|p| index[p].iter().cloned().enumerate().map(|(i, k)| (k, i)).collect());
    let image = |p: usize, (e, m): &(Exponents, u32)| -> SparseVec<F> {
        let w = PolyForm::monomial(v, e.clone(), *m, F::one());
        let out = w.d().add(&a.lie_derivative(&w));
        SparseVec::from_pairs(out.terms().map(|(e, m, c)| (lookup[1 - p][&(e.clone(), m)], c.clone())))
    };
    let cols: [Vec<SparseVec<F>>; 2] = [0, 1].map(|p| index[p].iter().map(|k| image(p, k)).collect());
    let small = d - guard;
    let mut ranks = [(0usize, 0usize); 2];
    for p in 0..2 {
        let dp = SparseMatrix::from_columns(index[1 - p].len(), &cols[p])?;
        let incoming = SparseMatrix::from_columns(index[p].len(), &cols[1 - p])?;
        let boundaries = column_space(&incoming);
        let cycles = index[p].len() - crate::exactlin::rank(&dp);
        let truncated = cycles - boundaries.rank();
        let small_idx: Vec<usize> =
            (0..index[p].len()).filter(|&i| index[p][i].0.iter().sum::<u32>() <= small).collect();
        let small_cols: Vec<SparseVec<F>> = small_idx.iter().map(|&i| cols[p][i].clone()).collect();
        let restricted = SparseMatrix::from_columns(index[1 - p].len(), &small_cols)?;
        let mut span = boundaries.clone();
        for z in kernel_basis(&restricted) {
            span.insert(z.remap(|j| small_idx[j]));
        }
        ranks[p] = (span.rank() - boundaries.rank(), truncated);
    }
    Ok(PoissonHomology {
        vars: v,
        degree_bound: d,
        guard_band: guard,
        even: ranks[0].0,
        odd: ranks[1].0,
        truncated_even: ranks[0].1,
        truncated_odd: ranks[1].1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn plane() -> Bivector<Q> {
        ConstantSymplectic::new(1).alpha()
    }

    fn so3() -> Bivector<Q> {
        let c = |i| PolyForm::<Q>::coordinate(3, i);
        let mut a = Bivector::zero(3);
        a.add_component(0, 1, c(2)).unwrap();
        a.add_component(1, 2, c(0)).unwrap();
        a.add_component(2, 0, c(1)).unwrap();
        a
    }

    fn non_jacobi() -> Bivector<Q> {
        let mut a = Bivector::zero(4);
        a.add_component(0, 1, PolyForm::constant(4, Q::from_i64(1))).unwrap();
        a.add_component(2, 3, PolyForm::coordinate(4, 0)).unwrap();
        a
    }

    #[test]
    fn jacobi() {
        assert!(jacobi_check(&plane(), 3).passes);
        assert!(jacobi_check(&so3(), 2).passes);
        let r = jacobi_check(&non_jacobi(), 2);
        assert!(!r.passes);
        assert!(r.witness.is_some());
    }

    #[test]
    fn conjugation() {
        assert!(conjugation_check(&plane(), 6).unwrap().passes);
        assert!(conjugation_check(&so3(), 3).unwrap().passes);
        assert!(conjugation_check(&Bivector::<Q>::zero(2), 3).unwrap().passes);
        assert!(!conjugation_check(&non_jacobi(), 2).unwrap().passes);
        assert_eq!(brylinski_check(&so3(), 3), (true, true));
    }

    #[test]
    fn star() {
        let s = ConstantSymplectic::new(1);
        let one = PolyForm::<Q>::constant(2, Q::from_i64(1));
        assert_eq!(hodge_star(&one, &s).unwrap(), s.omega());
        assert_eq!(hodge_star(&s.omega(), &s).unwrap(), one.scale(&Q::from_i64(-1)));
        let r = star_identity_check::<Q>(&s, 3).unwrap();
        assert!(!r.literal_passes && !r.literal_passes_other_sign);
        assert!(r.symmetric_passes);
        assert!(star_identity_check::<Q>(&ConstantSymplectic::new(2), 1).unwrap().symmetric_passes);
    }

    #[test]
    fn homology() {
        let h = poisson_homology_ranks(&plane(), 6).unwrap();
        assert_eq!((h.even, h.odd), (1, 0));
        let h = poisson_homology_ranks(&Bivector::<Q>::zero(2), 6).unwrap();
        assert_eq!((h.even, h.odd), (1, 0));
        let h = poisson_homology_ranks(&Bivector::<Q>::zero(0), 6).unwrap();
        assert_eq!((h.even, h.odd), (1, 0));
        assert!(matches!(poisson_homology_ranks(&non_jacobi(), 4), Err(NcgError::Contract(_))));
    }
}
