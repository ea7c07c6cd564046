use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{algebra_from_json, AlgebraSpec};
use crate::error::{NcgError, Result};
use crate::scalar::{parse_rational, FieldDescriptor};

type Row = Vec<(usize, BigRational)>;

fn one() -> BigRational {
    BigRational::one()
}

fn accumulate(acc: &mut BTreeMap<usize, BigRational>, k: usize, c: BigRational) {
    let e = acc.entry(k).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

/// Re-expresses a natural basis in one where element 0 is `unit`.
///
/// The new basis is `unit` followed by the natural basis elements other than
/// `replaced`, in order. Requires `unit[replaced] != 0`.
fn rebase_with_unit(
    name: String,
    field: FieldDescriptor,
    table: &[Vec<Row>],
    unit: &Row,
    replaced: usize,
) -> AlgebraSpec {
    let dim = table.len();
    let ur = unit
        .iter()
        .find(|(i, _)| *i == replaced)
        .map(|(_, c)| c.clone())
        .expect("unit has a component on the replaced element");
    let new_of = |i: usize| if i < replaced { i + 1 } else { i };
    let to_natural = |a: usize| -> Row {
        if a == 0 {
            unit.clone()
        } else {
            let i = if a <= replaced { a - 1 } else { a };
            vec![(i, one())]
        }
    };
    let to_new = |v: &BTreeMap<usize, BigRational>| -> Row {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            if *i == replaced {
                let s = c / &ur;
                accumulate(&mut acc, 0, s.clone());
                for (j, uj) in unit {
                    if *j != replaced {
                        accumulate(&mut acc, new_of(*j), -(&s * uj));
                    }
                }
            } else {
                accumulate(&mut acc, new_of(*i), c.clone());
            }
        }
        acc.into_iter().collect()
    };
    AlgebraSpec::from_products(name, field, dim, |a, b| {
        let mut prod = BTreeMap::new();
        for (i, x) in to_natural(a) {
            for (j, y) in to_natural(b) {
                for (k, c) in &table[i][j] {
                    accumulate(&mut prod, *k, &x * &y * c);
                }
            }
        }
        to_new(&prod)
    })
}

fn reorder<T: Clone>(v: &[T], replaced: usize, unit_value: T) -> Vec<T> {
    std::iter::once(unit_value)
        .chain(v.iter().enumerate().filter(|(i, _)| *i != replaced).map(|(_, x)| x.clone()))
        .collect()
}

/// `A ⊗ Mat_m`, with basis `1` followed by `e_ab ⊗ x_i` (omitting `e_mm ⊗ 1`).
pub fn matrix_algebra(a: &AlgebraSpec, m: usize) -> Result<AlgebraSpec> {
    if m < 1 {
        return Err(NcgError::InvalidParameter("matrix size must be >= 1".into()));
    }
    let da = a.dim;
    let at = a.rational_table();
    let idx = |r: usize, c: usize, i: usize| (r * m + c) * da + i;
    let n = m * m * da;
    let mut table = vec![vec![Vec::new(); n]; n];
    for r in 0..m {
        for c in 0..m {
            for d in 0..m {
                for i in 0..da {
                    for j in 0..da {
                        table[idx(r, c, i)][idx(c, d, j)] =
                            at[i][j].iter().map(|(k, x)| (idx(r, d, *k), x.clone())).collect();
                    }
                }
            }
        }
    }
    let unit: Row = (0..m).map(|r| (idx(r, r, 0), one())).collect();
    let replaced = idx(m - 1, m - 1, 0);
    let name = if a.name == "point" { format!("mat{m}") } else { format!("mat{m}({})", a.name) };
    let mut out = rebase_with_unit(name, a.field, &table, &unit, replaced);
    let spread = |v: &[i64]| -> Vec<i64> { (0..m * m).flat_map(|_| v.iter().copied()).collect() };
    if let Some(w) = &a.weight {
        out.weight = Some(reorder(&spread(w), replaced, 0));
    }
    if let Some(p) = &a.parity {
        let p: Vec<i64> = p.iter().map(|&x| x as i64).collect();
        out.parity = Some(reorder(&spread(&p), replaced, 0).into_iter().map(|x| x as u8).collect());
    }
    out.weight_cutoff = a.weight_cutoff;
    Ok(out)
}

/// A bimodule of dimension `dim` with a left action of one algebra and a
/// right action of another: `a_i · x_j = Σ c x_k` and `x_j · b_i = Σ c x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleSpec {
    pub left: AlgebraSpec,
    pub right: AlgebraSpec,
    pub dim: usize,
    /// `(i, j, k, c)`: `a_i · x_j` has coefficient `c` on `x_k`.
    pub left_action: Vec<(usize, usize, usize, BigRational)>,
    /// `(j, i, k, c)`: `x_j · b_i` has coefficient `c` on `x_k`.
    pub right_action: Vec<(usize, usize, usize, BigRational)>,
}

impl BimoduleSpec {
    pub fn zero(left: AlgebraSpec, right: AlgebraSpec) -> Self {
        BimoduleSpec { left, right, dim: 0, left_action: vec![], right_action: vec![] }
    }

    /// The ground field as a bimodule over two copies of itself.
    pub fn ground(field: FieldDescriptor) -> Self {
        let k = point(field);
        BimoduleSpec {
            left: k.clone(),
            right: k,
            dim: 1,
            left_action: vec![(0, 0, 0, one())],
            right_action: vec![(0, 0, 0, one())],
        }
    }

    fn left_table(&self) -> Vec<Vec<Row>> {
        let mut t = vec![vec![Vec::new(); self.dim]; self.left.dim];
        for (i, j, k, c) in &self.left_action {
            t[*i][*j].push((*k, c.clone()));
        }
        t
    }

    fn right_table(&self) -> Vec<Vec<Row>> {
        let mut t = vec![vec![Vec::new(); self.right.dim]; self.dim];
        for (j, i, k, c) in &self.right_action {
            t[*j][*i].push((*k, c.clone()));
        }
        t
    }

    /// Unitality, both module axioms and commutation of the actions,
    /// checked over the rationals on basis elements.
    pub fn check(&self) -> Result<()> {
        let bad = |s: String| Err(NcgError::Contract(format!("bimodule: {s}")));
        for (i, j, k, _) in &self.left_action {
            if *i >= self.left.dim || *j >= self.dim || *k >= self.dim {
                return bad(format!("left action entry ({i}, {j}, {k}) out of range"));
            }
        }
        for (j, i, k, _) in &self.right_action {
            if *i >= self.right.dim || *j >= self.dim || *k >= self.dim {
                return bad(format!("right action entry ({j}, {i}, {k}) out of range"));
            }
        }
        let lt = self.left_table();
        let rt = self.right_table();
        let at = self.left.rational_table();
        let bt = self.right.rational_table();
        let norm = |r: &Row| -> Row {
            let mut acc = BTreeMap::new();
            for (k, c) in r {
                accumulate(&mut acc, *k, c.clone());
            }
            acc.into_iter().collect()
        };
        let apply = |row: &Row, f: &dyn Fn(usize) -> Row| -> Row {
            let mut acc = BTreeMap::new();
            for (i, c) in row {
                for (k, d) in f(*i) {
                    accumulate(&mut acc, k, c * &d);
                }
            }
            acc.into_iter().collect()
        };
        for x in 0..self.dim {
            let e = vec![(x, one())];
            if norm(&lt[0][x]) != e {
                return bad(format!("1·x{x} != x{x}"));
            }
            if norm(&rt[x][0]) != e {
                return bad(format!("x{x}·1 != x{x}"));
            }
            for a in 0..self.left.dim {
                for a2 in 0..self.left.dim {
                    let lhs = apply(&at[a][a2], &|k| lt[k][x].clone());
                    let rhs = apply(&lt[a2][x], &|k| lt[a][k].clone());
                    if lhs != rhs {
                        return bad(format!("(a{a}a{a2})·x{x} != a{a}·(a{a2}·x{x})"));
                    }
                }
                for b in 0..self.right.dim {
                    let lhs = apply(&lt[a][x], &|k| rt[k][b].clone());
                    let rhs = apply(&rt[x][b], &|k| lt[a][k].clone());
                    if lhs != rhs {
                        return bad(format!("(a{a}·x{x})·b{b} != a{a}·(x{x}·b{b})"));
                    }
                }
            }
            for b in 0..self.right.dim {
                for b2 in 0..self.right.dim {
                    let lhs = apply(&rt[x][b], &|k| rt[k][b2].clone());
                    let rhs = apply(&bt[b][b2], &|k| rt[x][k].clone());
                    if lhs != rhs {
                        return bad(format!("(x{x}·b{b})·b{b2} != x{x}·(b{b}b{b2})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Upper-triangular gluing `[[b, m], [0, a]]` of `a` and `b` along a
/// `b`–`a`-bimodule: `(a, b, m)(a', b', m') = (aa', bb', b·m' + m·a')`.
///
/// Basis: `1`, `1_A`, non-unit basis of `A`, non-unit basis of `B`, basis of `M`.
pub fn glue(a: &AlgebraSpec, b: &AlgebraSpec, m: &BimoduleSpec) -> Result<AlgebraSpec> {
    if a.field != b.field || m.left.field != b.field || m.right.field != a.field {
        return Err(NcgError::Structural(format!(
            "glue needs a shared field, got {}, {} and a bimodule over {}/{}",
            a.field, b.field, m.left.field, m.right.field
        )));
    }
    if m.left != *b || m.right != *a {
        return Err(NcgError::Structural(
            "bimodule must have the second algebra acting on the left and the first on the right".into(),
        ));
    }
    m.check()?;
    let (da, db, dm) = (a.dim, b.dim, m.dim);
    let n = da + db + dm;
    let at = a.rational_table();
    let bt = b.rational_table();
    let lt = m.left_table();
    let rt = m.right_table();
    let mut table = vec![vec![Vec::new(); n]; n];
    let shift = |r: &Row, s: usize| -> Row { r.iter().map(|(k, c)| (k + s, c.clone())).collect() };
    for i in 0..da {
        for j in 0..da {
            table[i][j] = at[i][j].clone();
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[da + i][da + j] = shift(&bt[i][j], da);
        }
        for x in 0..dm {
            table[da + i][da + db + x] = shift(&lt[i][x], da + db);
        }
    }
    for x in 0..dm {
        for j in 0..da {
            table[da + db + x][j] = shift(&rt[x][j], da + db);
        }
    }
    let unit = vec![(0, one()), (da, one())];
    let mut out = rebase_with_unit(format!("glue({}, {})", a.name, b.name), a.field, &table, &unit, da);
    if a.parity.is_some() || b.parity.is_some() {
        let pa = a.parity.clone().unwrap_or_else(|| vec![0; da]);
        let pb = b.parity.clone().unwrap_or_else(|| vec![0; db]);
        let all: Vec<u8> = pa.into_iter().chain(pb).chain(std::iter::repeat(0).take(dm)).collect();
        out.parity = Some(reorder(&all, da, 0));
    }
    Ok(out)
}

/// The opposite algebra, `e_i ∘ e_j = (-1)^{|i||j|} e_j e_i`.
pub fn opposite(a: &AlgebraSpec) -> AlgebraSpec {
    let mut structure: Vec<_> = a
        .structure
        .iter()
        .map(|(i, j, k, c)| {
            let sign = a.parity_of(*i) * a.parity_of(*j) == 1;
            (*j, *i, *k, if sign { -c.clone() } else { c.clone() })
        })
        .collect();
    structure.sort();
    let name = match a.name.strip_prefix("op(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("op({})", a.name),
    };
    AlgebraSpec { name, structure, ..a.clone() }
}

fn point(field: FieldDescriptor) -> AlgebraSpec {
    AlgebraSpec::from_products("point", field, 1, |_, _| vec![(0, one())]).with_weights(vec![0])
}

fn truncated_poly(field: FieldDescriptor, m: usize) -> AlgebraSpec {
    AlgebraSpec::from_products(format!("truncated_poly({m})"), field, m, |i, j| {
        if i + j < m {
            vec![(i + j, one())]
        } else {
            vec![]
        }
    })
    .with_weights((0..m as i64).collect())
}

/// Exponent vectors of total degree at most `max`, graded then lexicographically descending.
fn monomials(vars: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(vars: usize, deg: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == vars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(vars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        out.push(vec![]);
        return out;
    }
    for d in 0..=max {
        rec(vars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn poly_truncated(field: FieldDescriptor, vars: usize, max: usize) -> AlgebraSpec {
    let mons = monomials(vars, max);
    let index: BTreeMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let spec = AlgebraSpec::from_products(format!("poly_truncated({vars},{max})"), field, mons.len(), |i, j| {
        let e: Vec<usize> = mons[i].iter().zip(&mons[j]).map(|(a, b)| a + b).collect();
        index.get(&e).map(|&k| vec![(k, one())]).unwrap_or_default()
    });
    spec.with_weights(mons.iter().map(|m| m.iter().sum::<usize>() as i64).collect())
        .with_cutoff(max as i64)
}

fn quantum_plane(field: FieldDescriptor, q: &BigRational, max: usize) -> AlgebraSpec {
    let mons = monomials(2, max);
    let index: BTreeMap<Vec<usize>, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let spec = AlgebraSpec::from_products(
        format!("quantum_plane({},{max})", crate::scalar::format_rational(q)),
        field,
        mons.len(),
        |i, j| {
            let (a, b) = (mons[i][0], mons[i][1]);
            let (c, d) = (mons[j][0], mons[j][1]);
            // x^a y^b x^c y^d = q^{bc} x^{a+c} y^{b+d}
            match index.get(&vec![a + c, b + d]) {
                Some(&k) => vec![(k, num_traits::pow(q.clone(), b * c))],
                None => vec![],
            }
        },
    );
    spec.with_weights(mons.iter().map(|m| (m[0] + m[1]) as i64).collect())
        .with_cutoff(max as i64)
}

fn diag(field: FieldDescriptor, n: usize) -> AlgebraSpec {
    // k^n: natural basis of coordinate idempotents, the last replaced by 1.
    let table: Vec<Vec<Row>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { vec![(i, one())] } else { vec![] }).collect()).collect();
    let unit: Row = (0..n).map(|i| (i, one())).collect();
    rebase_with_unit(format!("diag({n})"), field, &table, &unit, n - 1).with_weights(vec![0; n])
}

/// Names, parameters and one-line descriptions of the builtin algebras.
pub const CATALOGUE: &[(&str, &str, &str)] = &[
    ("point", "", "the ground field k"),
    ("dual_numbers", "", "k[e]/(e^2), weights (0, 1)"),
    ("truncated_poly", "m", "k[x]/(x^m), weight = degree"),
    ("poly_truncated", "vars, max_weight", "k[x_1..x_vars] with monomials above max_weight set to zero"),
    ("quantum_plane", "q, max_weight", "k<x, y>/(yx - q xy) cut at max_weight"),
    ("mat", "m, over", "m x m matrices over k or over another builtin"),
    ("diag", "n", "k^n, n orthogonal idempotents"),
    ("group_z2", "", "the group algebra k[Z/2]"),
    ("clifford1", "", "k[xi]/(xi^2 - 1) with xi odd"),
    ("a2_path", "", "path algebra of the A2 quiver, glued from two copies of k"),
];

/// A catalogue entry with representative parameters, for sweeps.
pub fn catalogue(field: FieldDescriptor) -> Result<Vec<AlgebraSpec>> {
    let p = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    };
    let q = if field.characteristic() == 5 { "2" } else { "5" };
    [
        ("point", p(&[])),
        ("dual_numbers", p(&[])),
        ("truncated_poly", p(&[("m", "3")])),
        ("poly_truncated", p(&[("vars", "2"), ("max_weight", "2")])),
        ("quantum_plane", p(&[("q", q), ("max_weight", "2")])),
        ("mat", p(&[("m", "2")])),
        ("diag", p(&[("n", "2")])),
        ("group_z2", p(&[])),
        ("clifford1", p(&[])),
        ("a2_path", p(&[])),
    ]
    .iter()
    .map(|(n, params)| builtin(n, params, field))
    .collect()
}

fn param_usize(params: &BTreeMap<String, String>, key: &str, default: Option<usize>) -> Result<usize> {
    match params.get(key) {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| NcgError::InvalidParameter(format!("{key} = {v:?} is not a non-negative integer"))),
        None => default.ok_or_else(|| NcgError::InvalidParameter(format!("missing parameter {key}"))),
    }
}

/// A builtin algebra by catalogue name, validated over `field`.
pub fn builtin(name: &str, params: &BTreeMap<String, String>, field: FieldDescriptor) -> Result<AlgebraSpec> {
    let field = field.check()?;
    let allowed: &[&str] = match name {
        "truncated_poly" => &["m"],
        "poly_truncated" => &["vars", "max_weight"],
        "quantum_plane" => &["q", "max_weight"],
        "mat" => &["m", "over"],
        "diag" => &["n"],
        _ => &[],
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        if CATALOGUE.iter().any(|(n, _, _)| *n == name) {
            return Err(NcgError::InvalidParameter(format!("{name} takes no parameter {k:?}")));
        }
    }
    let spec = match name {
        "point" | "k" => point(field),
        "dual_numbers" => truncated_poly(field, 2).rename("dual_numbers"),
        "truncated_poly" => {
            let m = param_usize(params, "m", None)?;
            if m < 1 {
                return Err(NcgError::InvalidParameter("truncated_poly needs m >= 1".into()));
            }
            truncated_poly(field, m)
        }
        "poly_truncated" => {
            let vars = param_usize(params, "vars", None)?;
            let max = param_usize(params, "max_weight", None)?;
            poly_truncated(field, vars, max)
        }
        "quantum_plane" => {
            let q = parse_rational(params.get("q").map(String::as_str).unwrap_or("1"))?;
            let max = param_usize(params, "max_weight", None)?;
            let p = field.characteristic();
            let zero_in_field = q.is_zero() || (p > 0 && (q.numer() % BigInt::from(p)).is_zero());
            if zero_in_field {
                return Err(NcgError::InvalidParameter(format!("q must be nonzero in {field}")));
            }
            if p > 0 && (q.denom() % BigInt::from(p)).is_zero() {
                return Err(NcgError::InvalidParameter(format!("q = {q} is not defined in {field}")));
            }
            quantum_plane(field, &q, max)
        }
        "mat" => {
            let m = param_usize(params, "m", None)?;
            let base = match params.get("over") {
                Some(o) => parse_algebra_ref(o)?.resolve(Some(field))?,
                None => point(field),
            };
            matrix_algebra(&base, m)?
        }
        "diag" => {
            let n = param_usize(params, "n", None)?;
            if n < 1 {
                return Err(NcgError::InvalidParameter("diag needs n >= 1".into()));
            }
            diag(field, n)
        }
        "group_z2" => AlgebraSpec::from_products("group_z2", field, 2, |i, j| vec![((i + j) % 2, one())]),
        "clifford1" => {
            AlgebraSpec::from_products("clifford1", field, 2, |i, j| vec![((i + j) % 2, one())]).with_parity(vec![0, 1])
        }
        "a2_path" => {
            let k = point(field);
            let mut s = glue(&k, &k, &BimoduleSpec::ground(field))?.rename("a2_path");
            s.weight = None;
            s
        }
        _ => return Err(NcgError::UnknownAlgebra(name.to_string())),
    };
    let report = spec.validate();
    if let Some(v) = report.violations.first() {
        return Err(NcgError::Contract(format!("builtin {name} failed validation: {v}")));
    }
    Ok(spec)
}

impl AlgebraSpec {
    fn rename(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Where an algebra comes from: a catalogue name with parameters, or a JSON file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRef {
    Builtin { name: String, params: BTreeMap<String, String> },
    File(PathBuf),
}

/// Parses `name`, `name:key=value,...`, or a path to a `.json` file.
///
/// Parameter values may themselves be references in parentheses, e.g.
/// `mat:m=2,over=(truncated_poly:m=2)`.
pub fn parse_algebra_ref(s: &str) -> Result<AlgebraRef> {
    let s = s.trim();
    if s.ends_with(".json") || (s.contains('/') && !s.contains(':')) {
        return Ok(AlgebraRef::File(PathBuf::from(s)));
    }
    let (name, rest) = match s.split_once(':') {
        Some((n, r)) => (n.trim(), r),
        None => (s, ""),
    };
    if name.is_empty() {
        return Err(NcgError::InvalidParameter("empty algebra name".into()));
    }
    let mut params = BTreeMap::new();
    let mut depth = 0usize;
    let mut start = 0;
    let mut pieces = Vec::new();
    for (i, ch) in rest.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push(&rest[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&rest[start..]);
    for piece in pieces.into_iter().filter(|p| !p.trim().is_empty()) {
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| NcgError::InvalidParameter(format!("expected key=value, got {piece:?}")))?;
        let v = v.trim();
        let v = v.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(v);
        params.insert(k.trim().to_string(), v.to_string());
    }
    Ok(AlgebraRef::Builtin { name: name.to_string(), params })
}

impl AlgebraRef {
    /// Loads the spec. A file's rational constants are reinterpreted over
    /// `field` when one is given.
    pub fn resolve(&self, field: Option<FieldDescriptor>) -> Result<AlgebraSpec> {
        match self {
            AlgebraRef::Builtin { name, params } => {
                builtin(name, params, field.unwrap_or(FieldDescriptor::Rationals))
            }
            AlgebraRef::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| NcgError::Schema(format!("cannot read {}: {e}", path.display())))?;
                let spec = algebra_from_json(&text)?;
                Ok(match field {
                    Some(f) => spec.with_field(f.check()?),
                    None => spec,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QQ: FieldDescriptor = FieldDescriptor::Rationals;

    fn none() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    fn b(r: &str) -> AlgebraSpec {
        parse_algebra_ref(r).unwrap().resolve(Some(QQ)).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(b("point").dim, 1);
        assert_eq!(b("quantum_plane:q=2,max_weight=4").dim, 15);
        assert_eq!(b("mat:m=2").dim, 4);
        assert_eq!(b("mat:m=2,over=dual_numbers").dim, 8);
        assert_eq!(b("mat:m=3").dim, 9);
        assert_eq!(b("a2_path").dim, 3);
        assert_eq!(b("poly_truncated:vars=2,max_weight=5").dim, 21);
        let c = b("clifford1");
        assert_eq!(c.parity, Some(vec![0, 1]));
        assert_eq!(c.rational_table()[1][1], vec![(0, one())]);
    }

    #[test]
    fn mat2_basis() {
        // 1, e11, e12, e21; e12 e21 = e11 and e21 e12 = e22 = 1 - e11.
        let t = b("mat:m=2").rational_table();
        assert_eq!(t[2][3], vec![(1, one())]);
        assert_eq!(t[3][2], vec![(0, one()), (1, -one())]);
        assert_eq!(t[1][1], vec![(1, one())]);
    }

    #[test]
    fn parameter_errors() {
        let e = |r: &str| parse_algebra_ref(r).unwrap().resolve(Some(QQ)).unwrap_err();
        assert!(matches!(e("quantum_plane:q=0,max_weight=2"), NcgError::InvalidParameter(_)));
        assert!(matches!(e("mat:m=0"), NcgError::InvalidParameter(_)));
        assert!(matches!(e("truncated_poly:m=0"), NcgError::InvalidParameter(_)));
        assert!(matches!(e("no_such_algebra"), NcgError::UnknownAlgebra(_)));
        assert!(matches!(e("point:m=2"), NcgError::InvalidParameter(_)));
        let f5 = FieldDescriptor::Prime(5);
        let mut p = none();
        p.insert("q".into(), "5".into());
        p.insert("max_weight".into(), "2".into());
        assert!(builtin("quantum_plane", &p, f5).is_err());
    }

    #[test]
    fn catalogue_validates_everywhere() {
        for f in [QQ, FieldDescriptor::Prime(2), FieldDescriptor::Prime(3), FieldDescriptor::Prime(5)] {
            for a in catalogue(f).unwrap() {
                assert!(a.validate().passed(), "{} over {f}", a.name);
            }
        }
    }

    #[test]
    fn opposite_is_an_involution() {
        for a in catalogue(QQ).unwrap() {
            let op = opposite(&a);
            assert!(op.validate().passed());
            assert_eq!(opposite(&op), a);
        }
    }

    #[test]
    fn glue_with_zero_bimodule_is_a_product() {
        let a = b("dual_numbers");
        let c = b("clifford1");
        let g = glue(&a, &c, &BimoduleSpec::zero(c.clone(), a.clone())).unwrap();
        assert_eq!(g.dim, 4);
        assert!(g.validate().passed());
        // 1_A is a central idempotent.
        let t = g.rational_table();
        for j in 0..4 {
            assert_eq!(t[1][j], t[j][1]);
        }
        assert_eq!(t[1][1], vec![(1, one())]);
    }

    #[test]
    fn glue_field_mismatch() {
        let a = b("point");
        let f2 = builtin("point", &none(), FieldDescriptor::Prime(2)).unwrap();
        assert!(matches!(glue(&a, &f2, &BimoduleSpec::zero(f2.clone(), a.clone())), Err(NcgError::Structural(_))));
    }

    #[test]
    fn weight_violation_is_named() {
        let mut a = b("quantum_plane:q=2,max_weight=2");
        let mut w = a.weight.clone().unwrap();
        w[1] = 2;
        a.weight = Some(w);
        let r = a.validate();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| matches!(v, super::super::Violation::Weight { .. })));
    }
}
