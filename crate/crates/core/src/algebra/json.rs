use serde::{Deserialize, Serialize};

use super::AlgebraSpec;
use crate::error::{NcgError, Result};
use crate::scalar::{format_rational, parse_rational, FieldDescriptor};

pub const ALGEBRA_FORMAT: &str = "ncg-algebra/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format: String,
    name: String,
    field: FieldDescriptor,
    dim: usize,
    unit_index: usize,
    structure: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parity: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight_cutoff: Option<i64>,
}

/// Parses an algebra file. Structural problems are reported here; algebra
/// axioms are left to [`AlgebraSpec::validate`].
pub fn algebra_from_json(text: &str) -> Result<AlgebraSpec> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| NcgError::Schema(e.to_string()))?;
    if file.format != ALGEBRA_FORMAT {
        return Err(NcgError::Schema(format!(
            "expected format {ALGEBRA_FORMAT:?}, got {:?}",
            file.format
        )));
    }
    let mut structure = Vec::with_capacity(file.structure.len());
    for (i, j, k, c) in file.structure {
        let c = parse_rational(&c).map_err(|e| NcgError::Schema(format!("entry [{i}, {j}, {k}]: {e}")))?;
        if !num_traits::Zero::is_zero(&c) {
            structure.push((i, j, k, c));
        }
    }
    structure.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    if structure.windows(2).any(|w| (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2)) {
        return Err(NcgError::Schema("duplicate structure entry".into()));
    }
    Ok(AlgebraSpec {
        name: file.name,
        field: file.field,
        dim: file.dim,
        unit_index: file.unit_index,
        structure,
        weight: file.weight,
        parity: file.parity,
        weight_cutoff: file.weight_cutoff,
    })
}

pub fn algebra_to_json(spec: &AlgebraSpec) -> String {
    let file = AlgebraFile {
        format: ALGEBRA_FORMAT.to_string(),
        name: spec.name.clone(),
        field: spec.field,
        dim: spec.dim,
        unit_index: spec.unit_index,
        structure: spec.structure.iter().map(|(i, j, k, c)| (*i, *j, *k, format_rational(c))).collect(),
        weight: spec.weight.clone(),
        parity: spec.parity.clone(),
        weight_cutoff: spec.weight_cutoff,
    };
    serde_json::to_string_pretty(&file).expect("algebra serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue;

    #[test]
    fn round_trip() {
        for a in catalogue(FieldDescriptor::Rationals).unwrap() {
            assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
        }
    }

    #[test]
    fn strict_parsing() {
        let ok = r#"{"format":"ncg-algebra/1","name":"k","field":"Q","dim":1,"unit_index":0,"structure":[[0,0,0,"1/1"]]}"#;
        assert!(algebra_from_json(ok).is_ok());
        let extra = ok.replace("\"dim\"", "\"colour\":1,\"dim\"");
        assert!(matches!(algebra_from_json(&extra), Err(NcgError::Schema(_))));
        let bad_num = ok.replace("1/1", "1/0");
        assert!(matches!(algebra_from_json(&bad_num), Err(NcgError::Schema(_))));
        let bad_fmt = ok.replace("ncg-algebra/1", "ncg-algebra/2");
        assert!(matches!(algebra_from_json(&bad_fmt), Err(NcgError::Schema(_))));
    }
}
