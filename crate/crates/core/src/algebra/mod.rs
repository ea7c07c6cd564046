//! Finite-dimensional (super)algebras given by structure constants.
//!
//! An [`AlgebraSpec`] is the field-independent description (rational
//! constants plus a [`FieldDescriptor`]); an [`Algebra<F>`] is its
//! realization over a concrete scalar type with a product table ready for
//! the chain-level code.

mod build;
mod json;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::exactlin::SparseVec;
use crate::scalar::{FieldDescriptor, Scalar};

pub use build::{
    builtin, catalogue, glue, matrix_algebra, opposite, parse_algebra_ref, AlgebraRef,
    BimoduleSpec, CATALOGUE,
};
pub use json::{algebra_from_json, algebra_to_json, ALGEBRA_FORMAT};

/// A finite-dimensional associative algebra by structure constants
/// `e_i · e_j = Σ_k c_{ij}^k e_k`. Basis element 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: FieldDescriptor,
    pub dim: usize,
    pub unit_index: usize,
    /// Sorted `(i, j, k, c)` with `c != 0`.
    pub structure: Vec<(usize, usize, usize, BigRational)>,
    pub weight: Option<Vec<i64>>,
    pub parity: Option<Vec<u8>>,
    /// For weight-truncated models of infinite algebras: products of total
    /// weight above this value were set to zero.
    pub weight_cutoff: Option<i64>,
}

impl AlgebraSpec {
    /// Builds a spec from a product closure on basis indices.
    pub fn from_products(
        name: impl Into<String>,
        field: FieldDescriptor,
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, BigRational)>,
    ) -> Self {
        let mut structure = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, c) in product(i, j) {
                    *acc.entry(k).or_insert_with(BigRational::zero) += c;
                }
                structure.extend(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (i, j, k, c)));
            }
        }
        AlgebraSpec {
            name: name.into(),
            field,
            dim,
            unit_index: 0,
            structure,
            weight: None,
            parity: None,
            weight_cutoff: None,
        }
    }

    pub fn with_weights(mut self, w: Vec<i64>) -> Self {
        self.weight = Some(w);
        self
    }

    pub fn with_parity(mut self, p: Vec<u8>) -> Self {
        self.parity = Some(p);
        self
    }

    pub fn with_cutoff(mut self, c: i64) -> Self {
        self.weight_cutoff = Some(c);
        self
    }

    pub fn with_field(mut self, field: FieldDescriptor) -> Self {
        self.field = field;
        self
    }

    pub fn parity_of(&self, i: usize) -> u8 {
        self.parity.as_ref().map_or(0, |p| p[i] & 1)
    }

    /// Products as rational sparse rows, `table[i][j] = e_i e_j`.
    pub fn rational_table(&self) -> Vec<Vec<Vec<(usize, BigRational)>>> {
        let mut t = vec![vec![Vec::new(); self.dim]; self.dim];
        for (i, j, k, c) in &self.structure {
            t[*i][*j].push((*k, c.clone()));
        }
        t
    }

    /// Checks the stated invariants over the spec's own field.
    pub fn validate(&self) -> ValidationReport {
        let field = match self.field.check() {
            Ok(f) => f,
            Err(e) => {
                return ValidationReport { violations: vec![Violation::Field(e.to_string())] }
            }
        };
        let res: Result<ValidationReport> = crate::with_field!(field, F => Ok(validate_over::<F>(self)));
        res.unwrap_or_else(|e| ValidationReport { violations: vec![Violation::Field(e.to_string())] })
    }
}

/// One violated identity, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Shape { detail: String },
    Field(String),
    UnitIndex { unit_index: usize },
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { j: usize },
    RightUnit { i: usize },
    Weight { i: usize, j: usize, k: usize },
    Parity { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { detail } => write!(f, "shape: {detail}"),
            Violation::Field(d) => write!(f, "field: {d}"),
            Violation::UnitIndex { unit_index } => {
                write!(f, "unit must be basis element 0, got {unit_index}")
            }
            Violation::Associativity { i, j, k } => {
                write!(f, "(e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")
            }
            Violation::LeftUnit { j } => write!(f, "1·e{j} != e{j}"),
            Violation::RightUnit { i } => write!(f, "e{i}·1 != e{i}"),
            Violation::Weight { i, j, k } => {
                write!(f, "c_({i},{j})^{k} != 0 but weight({k}) != weight({i}) + weight({j})")
            }
            Violation::Parity { i, j, k } => {
                write!(f, "c_({i},{j})^{k} != 0 but parity({k}) != parity({i}) + parity({j})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn shape_violations(spec: &AlgebraSpec) -> Vec<Violation> {
    let mut v = Vec::new();
    if spec.dim == 0 {
        v.push(Violation::Shape { detail: "dimension must be >= 1".into() });
    }
    if spec.unit_index != 0 {
        v.push(Violation::UnitIndex { unit_index: spec.unit_index });
    }
    if let Some(w) = &spec.weight {
        if w.len() != spec.dim {
            v.push(Violation::Shape { detail: format!("{} weights for dimension {}", w.len(), spec.dim) });
        } else if w.first().is_some_and(|&x| x != 0) {
            v.push(Violation::Shape { detail: "the unit must have weight 0".into() });
        }
    }
    if let Some(p) = &spec.parity {
        if p.len() != spec.dim {
            v.push(Violation::Shape { detail: format!("{} parities for dimension {}", p.len(), spec.dim) });
        } else if p.iter().any(|&x| x > 1) {
            v.push(Violation::Shape { detail: "parities must be 0 or 1".into() });
        } else if p.first().is_some_and(|&x| x != 0) {
            v.push(Violation::Shape { detail: "the unit must be even".into() });
        }
    }
    for (i, j, k, _) in &spec.structure {
        if *i >= spec.dim || *j >= spec.dim || *k >= spec.dim {
            v.push(Violation::Shape { detail: format!("structure entry ({i}, {j}, {k}) out of range") });
        }
    }
    v
}

fn validate_over<F: Scalar>(spec: &AlgebraSpec) -> ValidationReport {
    let mut violations = shape_violations(spec);
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let alg = match Algebra::<F>::realize(spec) {
        Ok(a) => a,
        Err(e) => return ValidationReport { violations: vec![Violation::Field(e.to_string())] },
    };
    let d = alg.dim();
    for j in 0..d {
        if alg.basis_product(0, j) != &SparseVec::unit(j) {
            violations.push(Violation::LeftUnit { j });
        }
    }
    for i in 0..d {
        if alg.basis_product(i, 0) != &SparseVec::unit(i) {
            violations.push(Violation::RightUnit { i });
        }
    }
    for i in 0..d {
        for j in 0..d {
            let ij = alg.basis_product(i, j);
            for k in 0..d {
                let lhs = alg.mul_vec_basis(ij, k);
                let rhs = alg.mul_basis_vec(i, alg.basis_product(j, k));
                if lhs != rhs {
                    violations.push(Violation::Associativity { i, j, k });
                }
            }
        }
    }
    for (i, j, k, _) in &spec.structure {
        if let Some(w) = &spec.weight {
            if w[*k] != w[*i] + w[*j] {
                violations.push(Violation::Weight { i: *i, j: *j, k: *k });
            }
        }
        if let Some(p) = &spec.parity {
            if p[*k] != (p[*i] + p[*j]) % 2 {
                violations.push(Violation::Parity { i: *i, j: *j, k: *k });
            }
        }
    }
    ValidationReport { violations }
}

/// An algebra realized over the scalar type `F`.
#[derive(Clone, Debug)]
pub struct Algebra<F> {
    name: String,
    table: Vec<Vec<SparseVec<F>>>,
    weight: Option<Vec<i64>>,
    parity: Vec<u8>,
    super_graded: bool,
    weight_cutoff: Option<i64>,
}

impl<F: Scalar> Algebra<F> {
    /// Realizes a spec over `F` without checking the algebra axioms.
    pub fn realize(spec: &AlgebraSpec) -> Result<Self> {
        if spec.field.characteristic() != F::characteristic() {
            return Err(NcgError::Structural(format!(
                "algebra {} is over {} but was realized over {}",
                spec.name,
                spec.field,
                F::descriptor()
            )));
        }
        if let Some(v) = shape_violations(spec).first() {
            return Err(NcgError::Structural(v.to_string()));
        }
        let mut pairs: Vec<Vec<Vec<(usize, F)>>> = vec![vec![Vec::new(); spec.dim]; spec.dim];
        for (i, j, k, c) in &spec.structure {
            let c = F::from_rational(c).ok_or_else(|| {
                NcgError::UnsupportedField(format!(
                    "structure constant {c} of {} has a denominator divisible by {}",
                    spec.name,
                    F::characteristic()
                ))
            })?;
            pairs[*i][*j].push((*k, c));
        }
        let table = pairs
            .into_iter()
            .map(|row| row.into_iter().map(SparseVec::from_pairs).collect())
            .collect();
        Ok(Algebra {
            name: spec.name.clone(),
            table,
            weight: spec.weight.clone(),
            parity: spec.parity.clone().unwrap_or_else(|| vec![0; spec.dim]),
            super_graded: spec.parity.as_ref().is_some_and(|p| p.iter().any(|&x| x == 1)),
            weight_cutoff: spec.weight_cutoff,
        })
    }

    /// Validates, then realizes.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let alg = Self::realize(spec)?;
        let report = validate_over::<F>(spec);
        if let Some(v) = report.violations.first() {
            return Err(NcgError::Contract(format!("algebra {} is invalid: {v}", spec.name)));
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weight.as_deref()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weight.as_ref().map_or(0, |w| w[i])
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn is_super(&self) -> bool {
        self.super_graded
    }

    pub fn weight_cutoff(&self) -> Option<i64> {
        self.weight_cutoff
    }

    /// Weighted with every non-unit basis element of positive weight, so each
    /// weight piece of the Hochschild complex is finite.
    pub fn is_positively_graded(&self) -> bool {
        self.weight.as_ref().is_some_and(|w| w.iter().skip(1).all(|&x| x >= 1))
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i][j]
    }

    fn mul_vec_basis(&self, v: &SparseVec<F>, k: usize) -> SparseVec<F> {
        let mut acc = SparseVec::zero();
        for (i, c) in v.iter() {
            acc = acc.axpy(c, &self.table[*i][k]);
        }
        acc
    }

    fn mul_basis_vec(&self, i: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::zero();
        for (k, c) in v.iter() {
            acc = acc.axpy(c, &self.table[i][*k]);
        }
        acc
    }

    /// Product of two elements in basis coordinates.
    pub fn mul(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc = acc.axpy(&(x.clone() * y.clone()), &self.table[*i][*j]);
            }
        }
        acc
    }

    pub fn pow(&self, a: &SparseVec<F>, e: u64) -> SparseVec<F> {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn unit(&self) -> SparseVec<F> {
        SparseVec::unit(0)
    }

    pub fn scalar(&self, c: F) -> SparseVec<F> {
        SparseVec::unit(0).scale(&c)
    }

    pub fn commutator(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> SparseVec<F> {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_idempotent(&self, p: &SparseVec<F>) -> bool {
        &self.mul(p, p) == p
    }

    pub fn one_coefficient() -> F {
        F::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;
    use num_traits::One;

    #[test]
    fn dual_numbers_validate() {
        let a = builtin("dual_numbers", &BTreeMap::new(), FieldDescriptor::Rationals).unwrap();
        assert!(a.validate().passed());
        assert_eq!(a.dim, 2);
        assert_eq!(a.weight, Some(vec![0, 1]));
    }

    #[test]
    fn broken_associativity_is_witnessed() {
        // a·a = b, b·a = a, a·b = 0: (aa)a = a but a(aa) = 0.
        let one = BigRational::one;
        let a = AlgebraSpec::from_products("broken", FieldDescriptor::Rationals, 3, |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, one())],
            (1, 1) => vec![(2, one())],
            (2, 1) => vec![(1, one())],
            _ => vec![],
        });
        let r = a.validate();
        assert!(r.violations.contains(&Violation::Associativity { i: 1, j: 1, k: 1 }));
        assert!(Algebra::<Q>::from_spec(&a).is_err());
        assert!(Algebra::<Q>::realize(&a).is_ok());
    }
}
