//! The bytes a command depends on: every referenced file, recursively, and
//! the catalogue references themselves.

use std::path::Path;

use ncg_core::algebra::{parse_algebra_ref, AlgebraRef};
use ncg_core::kchern::idempotent_from_json;
use ncg_core::scalar::parse_rational;
use ncg_core::{NcgError, Result};

use crate::{Command, PoissonCommand};

pub type Inputs = Vec<(String, Vec<u8>)>;

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| NcgError::Structural(format!("cannot read {}: {e}", path.display())))
}

fn reference(label: &str, r: &str, out: &mut Inputs) -> Result<()> {
    match parse_algebra_ref(r)? {
        AlgebraRef::File(p) => out.push((label.into(), read(&p)?)),
        AlgebraRef::Builtin { params, .. } => {
            out.push((label.into(), r.as_bytes().to_vec()));
            for (k, v) in &params {
                let nested = v.contains('/') && !v.contains(':') && !v.contains('=') && parse_rational(v).is_err();
                if v.ends_with(".json") || nested {
                    reference(&format!("{label}.{k}"), v, out)?;
                }
            }
        }
    }
    Ok(())
}

fn expression(label: &str, s: &str, out: &mut Inputs) -> Result<()> {
    if s.ends_with(".json") {
        out.push((label.into(), read(Path::new(s))?));
    } else {
        out.push((label.into(), s.as_bytes().to_vec()));
    }
    Ok(())
}

pub fn collect(cmd: &Command) -> Result<Inputs> {
    let mut out = Inputs::new();
    match cmd {
        Command::Validate(a) | Command::Ppower { algebra: a, .. } | Command::Hh { algebra: a, .. } => {
            reference("algebra", &a.algebra, &mut out)?
        }
        Command::Hc(c) | Command::Hp(c) | Command::Filtration(c) | Command::Degeneration(c) | Command::CharpCompare(c) => {
            reference("algebra", &c.algebra.algebra, &mut out)?
        }
        Command::Chern { idempotent: Some(p), .. } => {
            let bytes = read(p)?;
            let text = String::from_utf8_lossy(&bytes).into_owned();
            out.push(("idempotent".into(), bytes));
            if let Ok((AlgebraRef::File(a), _)) = idempotent_from_json(&text) {
                out.push(("algebra".into(), read(&a)?));
            }
        }
        Command::Chern { algebra, element, .. } => {
            if let Some(a) = algebra {
                reference("algebra", a, &mut out)?;
            }
            if let Some(e) = element {
                out.push(("element".into(), e.as_bytes().to_vec()));
            }
        }
        Command::Glue { a, b, .. } => {
            reference("a", a, &mut out)?;
            reference("b", b, &mut out)?;
        }
        Command::Poisson(p) => match p {
            PoissonCommand::Bracket { bivector, f, g } => {
                reference("bivector", &bivector.bivector, &mut out)?;
                expression("f", f, &mut out)?;
                expression("g", g, &mut out)?;
            }
            PoissonCommand::Lie { bivector, form } => {
                reference("bivector", &bivector.bivector, &mut out)?;
                expression("form", form, &mut out)?;
            }
            PoissonCommand::Jacobi { bivector, .. }
            | PoissonCommand::Conjugation { bivector, .. }
            | PoissonCommand::Homology { bivector, .. } => reference("bivector", &bivector.bivector, &mut out)?,
            PoissonCommand::Star { .. } => {}
        },
        Command::GradedPieces { .. } | Command::Catalogue => {}
    }
    Ok(out)
}
