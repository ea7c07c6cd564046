use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Bivector, Exponents, PolyForm};
use crate::algebra::{parse_algebra_ref, AlgebraRef};
use crate::error::{NcgError, Result};
use crate::scalar::{format_rational, parse_rational, Scalar};

pub const BIVECTOR_FORMAT: &str = "ncg-bivector/1";
pub const FORM_FORMAT: &str = "ncg-form/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Monomial {
    exponents: Exponents,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Component {
    i: usize,
    j: usize,
    terms: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BivectorFile {
    format: String,
    vars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hbar: Option<String>,
    components: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormTerm {
    exponents: Exponents,
    indices: Vec<usize>,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    format: String,
    vars: usize,
    terms: Vec<FormTerm>,
}

fn scalar<F: Scalar>(s: &str) -> Result<F> {
    let r = parse_rational(s)?;
    F::from_rational(&r).ok_or_else(|| NcgError::UnsupportedField(format!("{s} is not defined over {}", F::descriptor())))
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(NcgError::Schema(format!("expected format {expected:?}, got {found:?}")));
    }
    Ok(())
}

fn check_vars(vars: usize) -> Result<()> {
    if vars > 31 {
        return Err(NcgError::Schema(format!("at most 31 variables are supported, got {vars}")));
    }
    Ok(())
}

pub fn bivector_from_json<F: Scalar>(text: &str) -> Result<Bivector<F>> {
    let f: BivectorFile = serde_json::from_str(text).map_err(|e| NcgError::Schema(e.to_string()))?;
    check_format(&f.format, BIVECTOR_FORMAT)?;
    check_vars(f.vars)?;
    let mut a = Bivector::zero(f.vars);
    for c in f.components {
        let terms = c
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), vec![], scalar::<F>(&t.coefficient)?)))
            .collect::<Result<Vec<_>>>()?;
        a.add_component(c.i, c.j, PolyForm::from_terms(f.vars, terms)?)?;
    }
    if let Some(h) = f.hbar {
        a.hbar = scalar(&h)?;
    }
    Ok(a)
}

pub fn bivector_to_json<F: Scalar>(a: &Bivector<F>) -> String {
    let components = a
        .components()
        .map(|((i, j), f)| Component {
            i: *i,
            j: *j,
            terms: f
                .terms()
                .map(|(e, _, c)| Monomial { exponents: e.clone(), coefficient: format_rational(&c.to_rational()) })
                .collect(),
        })
        .collect();
    let hbar = (!a.hbar.is_one()).then(|| format_rational(&a.hbar.to_rational()));
    let f = BivectorFile { format: BIVECTOR_FORMAT.into(), vars: a.vars(), hbar, components };
    serde_json::to_string_pretty(&f).expect("serializes")
}

pub fn form_from_json<F: Scalar>(text: &str) -> Result<PolyForm<F>> {
    let f: FormFile = serde_json::from_str(text).map_err(|e| NcgError::Schema(e.to_string()))?;
    check_format(&f.format, FORM_FORMAT)?;
    check_vars(f.vars)?;
    let terms = f
        .terms
        .into_iter()
        .map(|t| Ok((t.exponents, t.indices, scalar::<F>(&t.coefficient)?)))
        .collect::<Result<Vec<_>>>()?;
    PolyForm::from_terms(f.vars, terms)
}

/// Named bivectors with a short description.
pub const BIVECTOR_CATALOGUE: &[(&str, &str)] = &[
    ("plane", "∂x∧∂y on the affine plane"),
    ("xy_plane", "xy ∂x∧∂y on the affine plane"),
    ("so3", "x3 ∂1∧∂2 + x1 ∂2∧∂3 + x2 ∂3∧∂1"),
    ("nonjacobi4", "∂1∧∂2 + x1 ∂3∧∂4, fails the Jacobi identity"),
    ("zero:vars=n", "α = 0 on n variables"),
    ("symplectic:pairs=n", "Σ ∂x_i∧∂y_i on 2n variables"),
];

fn usize_param(params: &std::collections::BTreeMap<String, String>, key: &str, default: usize) -> Result<usize> {
    params.get(key).map_or(Ok(default), |v| {
        v.parse().map_err(|_| NcgError::InvalidParameter(format!("{key} must be a non-negative integer, got {v:?}")))
    })
}

/// Resolves a catalogue name (`so3`, `zero:vars=3`, ...) or a `.json` path,
/// with an optional `hbar=p/q` parameter for catalogue entries.
pub fn bivector_builtin<F: Scalar>(reference: &str) -> Result<Bivector<F>> {
    let (name, params) = match parse_algebra_ref(reference)? {
        AlgebraRef::File(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| NcgError::Structural(format!("cannot read {}: {e}", p.display())))?;
            return bivector_from_json(&text);
        }
        AlgebraRef::Builtin { name, params } => (name, params),
    };
    let one = |v| PolyForm::<F>::constant(v, F::one());
    let x = |v, i| PolyForm::<F>::coordinate(v, i);
    let mut a = match name.as_str() {
        "plane" => {
            let mut a = Bivector::zero(2);
            a.add_component(0, 1, one(2))?;
            a
        }
        "xy_plane" => {
            let mut a = Bivector::zero(2);
            a.add_component(0, 1, x(2, 0).wedge(&x(2, 1)))?;
            a
        }
        "so3" => {
            let mut a = Bivector::zero(3);
            a.add_component(0, 1, x(3, 2))?;
            a.add_component(1, 2, x(3, 0))?;
            a.add_component(2, 0, x(3, 1))?;
            a
        }
        "nonjacobi4" => {
            let mut a = Bivector::zero(4);
            a.add_component(0, 1, one(4))?;
            a.add_component(2, 3, x(4, 0))?;
            a
        }
        "zero" => Bivector::zero(usize_param(&params, "vars", 2)?),
        "symplectic" => {
            let n = usize_param(&params, "pairs", 1)?;
            if n > 15 {
                return Err(NcgError::InvalidParameter(format!("pairs must be <= 15, got {n}")));
            }
            super::ConstantSymplectic::new(n).alpha()
        }
        other => return Err(NcgError::UnknownAlgebra(format!("unknown bivector {other:?}"))),
    };
    for k in params.keys() {
        if !matches!((name.as_str(), k.as_str()), (_, "hbar") | ("zero", "vars") | ("symplectic", "pairs")) {
            return Err(NcgError::InvalidParameter(format!("{name} takes no parameter {k:?}")));
        }
    }
    if let Some(h) = params.get("hbar") {
        let r: BigRational = parse_rational(h)?;
        a.hbar = F::from_rational(&r)
            .ok_or_else(|| NcgError::UnsupportedField(format!("ħ = {h} is not defined over {}", F::descriptor())))?;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn round_trip() {
        let a = bivector_builtin::<Q>("so3:hbar=1/2").unwrap();
        let back = bivector_from_json::<Q>(&bivector_to_json(&a)).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn strict() {
        let bad = r#"{"format":"ncg-bivector/1","vars":2,"components":[],"extra":1}"#;
        assert!(matches!(bivector_from_json::<Q>(bad), Err(NcgError::Schema(_))));
        assert!(bivector_builtin::<Q>("plane:vars=3").is_err());
        let f = r#"{"format":"ncg-form/1","vars":2,"terms":[{"exponents":[1,0],"indices":[1],"coefficient":"1"}]}"#;
        let w = form_from_json::<Q>(f).unwrap();
        assert_eq!(bivector_builtin::<Q>("plane").unwrap().lie_derivative(&w), PolyForm::constant(2, Q::from_i64(1)));
    }
}
