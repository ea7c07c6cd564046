//! Slow, dense reference computations that certify the fixed values used in
//! tests. Nothing here touches the sparse elimination of `ncg-core`; only the
//! catalogue of algebras is shared.

mod dense;
mod field;
mod fixtures;
mod forms;
mod hoch;
mod umod;

use sha2::{Digest, Sha256};

pub use fixtures::FIXTURES;

/// The registry of frozen fixture values, one `id | value` per line.
pub const REGISTRY: &str = include_str!("../fixtures/registry.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub id: String,
    pub value: String,
    /// SHA-256 of the canonical input description.
    pub inputs_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    Unregistered(String),
    /// The instance is too large for brute force.
    Skipped { id: String, reason: String },
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::Unregistered(id) => write!(f, "fixture {id:?} is not registered"),
            OracleError::Skipped { id, reason } => write!(f, "fixture {id:?} skipped: {reason}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// `(id, value)` pairs from the registry file, in file order.
pub fn registry() -> Vec<(&'static str, &'static str)> {
    REGISTRY
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (id, v) = l.split_once('|').expect("registry lines are `id | value`");
            (id.trim(), v.trim())
        })
        .collect()
}

/// The frozen value of a fixture.
pub fn expected(id: &str) -> &'static str {
    registry()
        .into_iter()
        .find(|(i, _)| *i == id)
        .map(|(_, v)| v)
        .unwrap_or_else(|| panic!("fixture {id:?} is not in the registry"))
}

/// Recomputes a fixture by brute force.
pub fn certify(id: &str) -> Result<OracleResult, OracleError> {
    let fx = FIXTURES.iter().find(|f| f.id == id).ok_or_else(|| OracleError::Unregistered(id.to_string()))?;
    let value = (fx.compute)().map_err(|reason| OracleError::Skipped { id: id.to_string(), reason })?;
    let mut h = Sha256::new();
    h.update(id.as_bytes());
    h.update(b"\n");
    h.update((fx.inputs)().as_bytes());
    Ok(OracleResult { id: id.to_string(), value, inputs_hash: hex::encode(h.finalize()) })
}
