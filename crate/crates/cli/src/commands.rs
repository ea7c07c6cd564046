use ncg_core::algebra::{
    algebra_to_json, glue, parse_algebra_ref, Algebra, AlgebraSpec, BimoduleSpec, CATALOGUE,
};
use ncg_core::cyclic::{
    char_p_compare, degeneration_check, graded_piece_analysis, hodge_filtration, hp_ranks, negative_cyclic, Verdict,
};
use ncg_core::hochschild::{hh0_direct, hh_ranks, DegreeWindow, HhTable, GUARD_BAND};
use ncg_core::kchern::{
    chern_idempotent, element_from_rationals, idempotent_from_json, ppower_lift_p2, ppower_on_hh0, Idempotent,
};
use ncg_core::poisson::{
    bivector_builtin, conjugation_check, form_from_json, jacobi_check, poisson_homology_ranks, star_identity_check,
    Bivector, ConstantSymplectic, PolyForm, BIVECTOR_CATALOGUE,
};
use ncg_core::scalar::{format_rational, parse_rational};
use ncg_core::{with_field, FieldDescriptor, NcgError, Result, Scalar};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::report::{Report, Status, Table};
use crate::{AlgebraArgs, BivectorArgs, Command, CyclicArgs, PoissonCommand, WindowArgs};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn load(a: &AlgebraArgs) -> Result<AlgebraSpec> {
    load_ref(&a.algebra, a.field)
}

fn load_ref(r: &str, field: Option<FieldDescriptor>) -> Result<AlgebraSpec> {
    parse_algebra_ref(r)?.resolve(field.map(|f| f.check()).transpose()?)
}

fn window(w: &WindowArgs) -> DegreeWindow {
    let d = DegreeWindow::new(w.n_max);
    match (w.weight_min, w.weight_max) {
        (Some(lo), Some(hi)) => d.with_weights(lo, hi),
        _ => d,
    }
}

fn header(r: &mut Report, spec: &AlgebraSpec, w: Option<&DegreeWindow>, n: Option<usize>) {
    r.field = Some(spec.field.to_string());
    r.window = w.cloned();
    r.truncation = n;
}

pub fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Validate(a) => validate(a),
        Command::Hh { algebra, window: w } => hh(algebra, &window(w)),
        Command::Hc(c) => hc(c),
        Command::Hp(c) => hp(c),
        Command::Filtration(c) => filtration(c),
        Command::Degeneration(c) => degeneration(c),
        Command::Chern { idempotent, algebra, element, field, u_trunc } => {
            let (reference, coeffs) = match (idempotent, algebra, element) {
                (Some(p), _, _) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| NcgError::Structural(format!("cannot read {}: {e}", p.display())))?;
                    idempotent_from_json(&text)?
                }
                (None, Some(a), Some(e)) => {
                    let coeffs = e.split(',').map(|c| parse_rational(c.trim())).collect::<Result<Vec<_>>>()?;
                    (parse_algebra_ref(a)?, coeffs)
                }
                _ => return Err(NcgError::InvalidParameter("chern needs --idempotent or --algebra with --element".into())),
            };
            let spec = reference.resolve(field.map(|f| f.check()).transpose()?)?;
            chern(&spec, &coeffs, *u_trunc)
        }
        Command::Ppower { algebra, lift } => ppower(algebra, *lift),
        Command::GradedPieces { dim_v, n, field } => graded(*dim_v, *n, *field),
        Command::CharpCompare(c) => charp(c),
        Command::Poisson(p) => poisson(p),
        Command::Glue { a, b, bimodule, field, n_max, emit } => glue_cmd(a, b, bimodule, *field, *n_max, emit.as_deref()),
        Command::Catalogue => Ok(catalogue()),
    }
}

fn validate(a: &AlgebraArgs) -> Result<Report> {
    let spec = load(a)?;
    let v = spec.validate();
    let mut r = Report::new("validate");
    header(&mut r, &spec, None, None);
    let mut t = Table::new("violations", &["kind", "witness"]);
    for x in &v.violations {
        let kind = to_value(x).get("kind").and_then(Value::as_str).unwrap_or("").to_string();
        t.row([kind, x.to_string()]);
    }
    r.result = json!({ "algebra": spec.name, "dim": spec.dim, "passed": v.passed(), "violations": to_value(&v.violations) });
    r.tables.push(t);
    if !v.passed() {
        r.status = Status::ValidationFailed;
        r.diagnostics.push(format!("{} violation(s); first: {}", v.violations.len(), v.violations[0]));
    }
    Ok(r)
}

fn hh_table(t: &HhTable, name: &str) -> Table {
    let mut tab = Table::new(name, &["n", "degree", "weight", "rank", "trusted"]);
    for e in &t.entries {
        let w = e.weight.map_or_else(|| "-".to_string(), |w| w.to_string());
        tab.row([e.n.to_string(), e.degree.to_string(), w, e.rank.to_string(), e.trusted.to_string()]);
    }
    tab
}

fn compute_hh(spec: &AlgebraSpec, w: &DegreeWindow) -> Result<HhTable> {
    with_field!(spec.field, F => hh_ranks(&Algebra::<F>::from_spec(spec)?, w))
}

fn hh(a: &AlgebraArgs, w: &DegreeWindow) -> Result<Report> {
    let spec = load(a)?;
    let t = compute_hh(&spec, w)?;
    let mut r = Report::new("hh");
    header(&mut r, &spec, Some(w), None);
    let untrusted = t.entries.iter().filter(|e| !e.trusted).count();
    r.guard_band = json!({ "weight_band": GUARD_BAND, "weight_cutoff": spec.weight_cutoff, "untrusted_entries": untrusted });
    if untrusted > 0 {
        r.diagnostics.push(format!("{untrusted} entr(ies) within {GUARD_BAND} of the weight cutoff are not trusted"));
    }
    let totals = t.totals();
    r.result = json!({ "algebra": t.algebra, "totals": totals, "ranks": totals.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") });
    r.tables.push(hh_table(&t, "hochschild"));
    Ok(r)
}

fn cyclic_setup(c: &CyclicArgs) -> Result<(AlgebraSpec, DegreeWindow)> {
    let w = window(&c.window);
    if w.n_max < 2 * c.u_trunc {
        return Err(NcgError::Window(format!("n-max = {} but u-trunc = {} needs n-max >= {}", w.n_max, c.u_trunc, 2 * c.u_trunc)));
    }
    Ok((load(&c.algebra)?, w))
}

fn hc(c: &CyclicArgs) -> Result<Report> {
    let (spec, w) = cyclic_setup(c)?;
    let nc = with_field!(spec.field, F => negative_cyclic(&Algebra::<F>::from_spec(&spec)?, &w, c.u_trunc))?;
    let mut r = Report::new("hc");
    header(&mut r, &spec, Some(&w), Some(c.u_trunc));
    r.guard_band = json!({
        "unstable_strings": nc.unstable_strings,
        "saturated": nc.even.saturated_at_n && nc.odd.saturated_at_n,
    });
    if nc.unstable_strings > 0 {
        r.diagnostics.push(format!("{} string(s) touching the window cut were left out", nc.unstable_strings));
    }
    let mut t = Table::new("modules", &["parity", "free_rank", "torsion_blocks", "saturated"]);
    for (name, m) in [("even", &nc.even), ("odd", &nc.odd)] {
        let blocks: Vec<String> = m.torsion_blocks.iter().map(|b| b.to_string()).collect();
        t.row([name.to_string(), m.free_rank.to_string(), format!("[{}]", blocks.join(" ")), m.saturated_at_n.to_string()]);
    }
    let mut s = Table::new("strings", &["weight", "parity", "start", "length", "multiplicity", "free"]);
    for (_, x) in nc.stable_strings() {
        let w = x.weight.map_or_else(|| "-".to_string(), |w| w.to_string());
        s.row([w, x.parity.to_string(), x.start.to_string(), x.length.to_string(), x.multiplicity.to_string(), x.free.to_string()]);
    }
    r.result = json!({ "algebra": nc.algebra, "even": to_value(&nc.even), "odd": to_value(&nc.odd), "per_weight": to_value(&nc.per_weight) });
    r.tables.push(t);
    r.tables.push(s);
    Ok(r)
}

fn hp(c: &CyclicArgs) -> Result<Report> {
    let (spec, w) = cyclic_setup(c)?;
    let e = with_field!(spec.field, F => hp_ranks(&Algebra::<F>::from_spec(&spec)?, &w, c.u_trunc))?;
    let mut r = Report::new("hp");
    header(&mut r, &spec, Some(&w), Some(c.u_trunc));
    r.guard_band = json!({ "saturated": e.saturated, "at_n": e.at_n, "at_n_minus_1": e.at_n_minus_1 });
    r.diagnostics = e.diagnostics.clone();
    if !e.conclusive {
        r.status = Status::Inconclusive;
    }
    let mut t = Table::new("periodic", &["parity", "rank"]);
    t.row(["even", &e.even.to_string()]);
    t.row(["odd", &e.odd.to_string()]);
    r.result = json!({ "algebra": spec.name, "even": e.even, "odd": e.odd, "conclusive": e.conclusive });
    r.tables.push(t);
    Ok(r)
}

fn filtration(c: &CyclicArgs) -> Result<Report> {
    let (spec, w) = cyclic_setup(c)?;
    let mut r = Report::new("filtration");
    header(&mut r, &spec, Some(&w), Some(c.u_trunc));
    let h = with_field!(spec.field, F => {
        let alg = Algebra::<F>::from_spec(&spec)?;
        let e = hp_ranks(&alg, &w, c.u_trunc)?;
        if !e.conclusive {
            r.status = Status::Inconclusive;
            r.diagnostics = e.diagnostics.clone();
            r.result = json!({ "algebra": spec.name, "conclusive": false });
            return Ok(r);
        }
        hodge_filtration(&alg, &w, c.u_trunc)
    })?;
    r.diagnostics = h.diagnostics.clone();
    r.guard_band = json!({ "saturated": h.u_profile_even.saturated_at_n && h.u_profile_odd.saturated_at_n });
    r.tables.push(steps_table("u_depth", &h.filtration));
    r.tables.push(steps_table("tensor_length", &h.degree_filtration));
    r.result = json!({
        "algebra": h.algebra,
        "hp_even": h.hp_even,
        "hp_odd": h.hp_odd,
        "verdict": h.degeneration.verdict.to_string(),
        "filtration": to_value(&h.filtration),
        "degree_filtration": to_value(&h.degree_filtration),
    });
    Ok(r)
}

fn steps_table(name: &str, steps: &[ncg_core::cyclic::FiltrationStep]) -> Table {
    let mut t = Table::new(name, &["index", "rank"]);
    for s in steps {
        t.row([s.label(), s.rank.to_string()]);
    }
    t
}

fn degeneration(c: &CyclicArgs) -> Result<Report> {
    let (spec, w) = cyclic_setup(c)?;
    let d = with_field!(spec.field, F => degeneration_check(&Algebra::<F>::from_spec(&spec)?, &w, c.u_trunc))?;
    let mut r = Report::new("degeneration");
    header(&mut r, &spec, Some(&w), Some(c.u_trunc.max(2)));
    if d.verdict == Verdict::Inconclusive {
        r.status = Status::Inconclusive;
        r.diagnostics.push("free ranks did not stabilize between N - 1 and N".into());
    }
    let mut t = Table::new("torsion", &["weight", "parity", "start", "length", "multiplicity"]);
    for x in &d.torsion {
        let w = x.weight.map_or_else(|| "-".to_string(), |w| w.to_string());
        t.row([w, x.parity.to_string(), x.start.to_string(), x.length.to_string(), x.multiplicity.to_string()]);
    }
    r.result = json!({ "algebra": spec.name, "verdict": d.verdict.to_string(), "torsion_strings": d.torsion.len() });
    r.tables.push(t);
    Ok(r)
}

fn word(w: &[usize]) -> String {
    w.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("⊗")
}

fn chern(spec: &AlgebraSpec, coeffs: &[BigRational], n: usize) -> Result<Report> {
    let mut r = Report::new("chern");
    header(&mut r, spec, None, Some(n));
    let (terms, cycle, hh0) = with_field!(spec.field, F => {
        let alg = Algebra::<F>::from_spec(spec)?;
        let pi = Idempotent::new(&alg, element_from_rationals::<F>(coeffs)?)?;
        let ch = chern_idempotent(&alg, &pi, n)?;
        Ok::<_, NcgError>((ch.chain.describe(), ch.cycle, ch.hh0_nonzero))
    })?;
    let mut t = Table::new("chain", &["u_power", "word", "coefficient"]);
    for (k, c) in terms.iter().enumerate() {
        for (w, x) in c {
            t.row([k.to_string(), word(w), x.clone()]);
        }
    }
    if !cycle {
        r.status = Status::ValidationFailed;
        r.diagnostics.push("(∂ + uB) of the chain is not zero".into());
    }
    r.result = json!({
        "algebra": spec.name,
        "element": coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        "cycle": cycle,
        "hh0_nonzero": hh0,
    });
    r.tables.push(t);
    Ok(r)
}

fn ppower(a: &AlgebraArgs, lift: bool) -> Result<Report> {
    let spec = load(a)?;
    let mut r = Report::new("ppower");
    header(&mut r, &spec, None, None);
    let (rep, lifts) = with_field!(spec.field, F => {
        let alg = Algebra::<F>::from_spec(&spec)?;
        let rep = ppower_on_hh0(&alg)?;
        let mut lifts = Vec::new();
        if lift {
            for i in 0..alg.dim() {
                let e = ncg_core::exactlin::SparseVec::from_pairs([(i, F::from_i64(1))]);
                let l = ppower_lift_p2(&alg, &e)?;
                lifts.push((i, l.cycle, l.lift.is_boundary_mod_u2(&alg)?));
            }
        }
        Ok::<_, NcgError>((rep, lifts))
    })?;
    let mut m = Table::new("matrix", &["class", "image"]);
    for (i, row) in rep.matrix.iter().enumerate() {
        m.row([format!("e{}", rep.basis[i]), row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")]);
    }
    r.tables.push(m);
    let mut ok = rep.well_defined && rep.additive;
    if lift {
        let mut t = Table::new("lift", &["basis", "cycle_mod_u2", "boundary_mod_u2"]);
        for (i, c, b) in &lifts {
            ok &= *c;
            t.row([format!("e{i}"), c.to_string(), b.to_string()]);
        }
        r.tables.push(t);
    }
    r.diagnostics = rep.witnesses.clone();
    if !ok {
        r.status = Status::ValidationFailed;
    }
    r.result = to_value(&rep);
    if lift {
        r.result["lift_cycles"] = json!(lifts.iter().all(|(_, c, _)| *c));
    }
    Ok(r)
}

fn graded(dim_v: usize, n: usize, field: FieldDescriptor) -> Result<Report> {
    let g = graded_piece_analysis(dim_v, n, field.check()?)?;
    let mut r = Report::new("graded-pieces");
    r.field = Some(field.to_string());
    let mut t = Table::new("homology", &["piece", "rank"]);
    t.row(["ker(1-σ)/im(N)".to_string(), g.ker_one_minus_sigma_mod_norm.to_string()]);
    t.row(["ker(N)/im(1-σ)".to_string(), g.ker_norm_mod_one_minus_sigma.to_string()]);
    r.tables.push(t);
    let mut result = to_value(&g);
    result["acyclic"] = json!(g.acyclic());
    r.result = result;
    Ok(r)
}

fn charp(c: &CyclicArgs) -> Result<Report> {
    let (spec, w) = cyclic_setup(c)?;
    let cmp = with_field!(spec.field, F => char_p_compare(&Algebra::<F>::from_spec(&spec)?, &w, c.u_trunc))?;
    let mut r = Report::new("charp-compare");
    header(&mut r, &spec, Some(&w), Some(c.u_trunc));
    let mut t = Table::new("slots", &["weight", "parity", "periodic", "hochschild_same_weight", "hochschild_frobenius", "agree"]);
    for s in &cmp.slots {
        let wt = s.weight.map_or_else(|| "-".to_string(), |w| w.to_string());
        t.row([
            wt,
            s.parity.to_string(),
            s.periodic.to_string(),
            s.hochschild_same_weight.to_string(),
            s.hochschild_frobenius.to_string(),
            s.agree.to_string(),
        ]);
    }
    if !cmp.all_agree {
        r.status = Status::ValidationFailed;
        r.diagnostics.push("free ranks of ∂ + uB and ∂ disagree in some slot".into());
    }
    if !cmp.all_agree_same_weight {
        r.diagnostics.push("at equal weights the ranks differ; agreement holds after matching w with w/p".into());
    }
    r.result = json!({ "algebra": cmp.algebra, "all_agree": cmp.all_agree, "all_agree_same_weight": cmp.all_agree_same_weight });
    r.tables.push(t);
    Ok(r)
}

/// Parses `c*x0^2*dx1 + x1 - 1/2` into a form on `vars` variables, or reads an ncg-form/1 file.
fn parse_form<F: Scalar>(s: &str, vars: usize) -> Result<PolyForm<F>> {
    if s.ends_with(".json") {
        let text =
            std::fs::read_to_string(s).map_err(|e| NcgError::Structural(format!("cannot read {s}: {e}")))?;
        let f = form_from_json::<F>(&text)?;
        if f.vars() != vars {
            return Err(NcgError::Structural(format!("form has {} variables, the bivector {vars}", f.vars())));
        }
        return Ok(f);
    }
    let bad = |t: &str| NcgError::InvalidParameter(format!("cannot parse {t:?} in {s:?}"));
    let index = |t: &str, rest: &str| -> Result<usize> {
        let i: usize = rest.parse().map_err(|_| bad(t))?;
        if i >= vars {
            return Err(NcgError::InvalidParameter(format!("variable index {i} out of range for {vars} variables")));
        }
        Ok(i)
    };
    let mut total = PolyForm::zero(vars);
    let spaced = s.replace('-', "+-");
    for term in spaced.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term),
        };
        let mut acc = PolyForm::constant(vars, F::one());
        for factor in body.split('*').map(str::trim) {
            let next = if let Some(rest) = factor.strip_prefix("dx") {
                PolyForm::dx(vars, index(factor, rest)?)
            } else if let Some(rest) = factor.strip_prefix('x') {
                let (i, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad(factor))?),
                    None => (rest, 1),
                };
                let x = PolyForm::coordinate(vars, index(factor, i)?);
                (0..e).fold(PolyForm::constant(vars, F::one()), |p, _| p.wedge(&x))
            } else {
                let c = parse_rational(factor).map_err(|_| bad(factor))?;
                let c = F::from_rational(&c)
                    .ok_or_else(|| NcgError::UnsupportedField(format!("{factor} over {}", F::descriptor())))?;
                PolyForm::constant(vars, c)
            };
            acc = acc.wedge(&next);
        }
        total = if neg { total.sub(&acc) } else { total.add(&acc) };
    }
    Ok(total)
}

fn bivector<F: Scalar>(b: &BivectorArgs, r: &mut Report) -> Result<Bivector<F>> {
    let a = bivector_builtin::<F>(&b.bivector)?;
    r.field = Some(F::descriptor().to_string());
    r.result = json!({ "bivector": b.bivector, "vars": a.vars(), "hbar": format_rational(&a.hbar.to_rational()) });
    Ok(a)
}

fn poisson(p: &PoissonCommand) -> Result<Report> {
    match p {
        PoissonCommand::Bracket { bivector: b, f, g } => {
            let mut r = Report::new("poisson bracket");
            with_field!(b.field.check()?, F => {
                let a = bivector::<F>(b, &mut r)?;
                let (f, g) = (parse_form::<F>(f, a.vars())?, parse_form::<F>(g, a.vars())?);
                r.result["f"] = json!(f.to_string());
                r.result["g"] = json!(g.to_string());
                r.result["bracket"] = json!(a.bracket(&f, &g).to_string());
                Ok::<_, NcgError>(())
            })?;
            Ok(r)
        }
        PoissonCommand::Lie { bivector: b, form } => {
            let mut r = Report::new("poisson lie");
            with_field!(b.field.check()?, F => {
                let a = bivector::<F>(b, &mut r)?;
                let w = parse_form::<F>(form, a.vars())?;
                r.result["form"] = json!(w.to_string());
                r.result["lie_derivative"] = json!(a.lie_derivative(&w).to_string());
                Ok::<_, NcgError>(())
            })?;
            Ok(r)
        }
        PoissonCommand::Jacobi { bivector: b, degree } => {
            let mut r = Report::new("poisson jacobi");
            with_field!(b.field.check()?, F => {
                let a = bivector::<F>(b, &mut r)?;
                let j = jacobi_check(&a, *degree);
                if !j.passes {
                    r.status = Status::ValidationFailed;
                }
                if let Some(w) = &j.witness {
                    r.diagnostics.push(format!("J({}, {}, {}) = {}", w.f, w.g, w.h, w.jacobiator));
                }
                r.result["jacobi"] = to_value(&j);
                Ok::<_, NcgError>(())
            })?;
            Ok(r)
        }
        PoissonCommand::Conjugation { bivector: b, degree } => {
            let mut r = Report::new("poisson conjugation");
            with_field!(b.field.check()?, F => {
                let a = bivector::<F>(b, &mut r)?;
                let c = conjugation_check(&a, *degree)?;
                if !c.passes {
                    r.status = Status::ValidationFailed;
                }
                if let Some(w) = &c.witness {
                    r.diagnostics.push(format!("fails on {}: {} != {}", w.form, w.left, w.right));
                }
                r.result["degree_bound"] = json!(degree);
                r.result["conjugation"] = to_value(&c);
                Ok::<_, NcgError>(())
            })?;
            Ok(r)
        }
        PoissonCommand::Star { pairs, degree, field } => {
            let mut r = Report::new("poisson star");
            r.field = Some(field.to_string());
            let s = with_field!(field.check()?, F => star_identity_check::<F>(&ConstantSymplectic::new(*pairs), *degree))?;
            if !s.passes() {
                r.status = Status::ValidationFailed;
            }
            for (name, w) in [("literal", &s.literal_witness), ("symmetric", &s.symmetric_witness)] {
                if let Some(w) = w {
                    r.diagnostics.push(format!("{name} identity fails on {}: {} != {}", w.form, w.left, w.right));
                }
            }
            let mut t = Table::new("identities", &["identity", "passes"]);
            t.row(["e^{ω∧} = e^{ι} * e^{-ι}", &s.literal_passes.to_string()]);
            t.row(["same, opposite sign of *", &s.literal_passes_other_sign.to_string()]);
            t.row(["e^{ω∧} = e^{ι} * e^{ι}", &s.symmetric_passes.to_string()]);
            r.tables.push(t);
            r.result = to_value(&s);
            Ok(r)
        }
        PoissonCommand::Homology { bivector: b, degree } => {
            let mut r = Report::new("poisson homology");
            with_field!(b.field.check()?, F => {
                let a = bivector::<F>(b, &mut r)?;
                let h = poisson_homology_ranks(&a, *degree)?;
                r.guard_band = json!({ "degree_guard": h.guard_band, "truncated_even": h.truncated_even, "truncated_odd": h.truncated_odd });
                r.result["even"] = json!(h.even);
                r.result["odd"] = json!(h.odd);
                r.result["degree_bound"] = json!(h.degree_bound);
                Ok::<_, NcgError>(())
            })?;
            Ok(r)
        }
    }
}

fn glue_cmd(
    a: &str,
    b: &str,
    bimodule: &str,
    field: Option<FieldDescriptor>,
    n_max: usize,
    emit: Option<&std::path::Path>,
) -> Result<Report> {
    let sa = load_ref(a, field)?;
    let sb = load_ref(b, field)?;
    let m = match bimodule {
        "ground" => BimoduleSpec::ground(sa.field),
        _ => BimoduleSpec::zero(sb.clone(), sa.clone()),
    };
    let g = glue(&sa, &sb, &m)?;
    let w = DegreeWindow::new(n_max);
    let (ta, tb, tg) = (compute_hh(&sa, &w)?, compute_hh(&sb, &w)?, compute_hh(&g, &w)?);
    let sum: Vec<usize> = ta.totals().iter().zip(tb.totals()).map(|(x, y)| x + y).collect();
    let additive = sum == tg.totals();
    let mut r = Report::new("glue");
    header(&mut r, &g, Some(&w), None);
    let mut t = Table::new("totals", &["n", "a", "b", "glued"]);
    for n in 0..=n_max {
        t.row([n, ta.total(n), tb.total(n), tg.total(n)]);
    }
    r.tables.push(t);
    if !additive {
        r.status = Status::ValidationFailed;
        r.diagnostics.push(format!("glued ranks {:?} differ from the sum {sum:?}", tg.totals()));
    }
    let hh0 = with_field!(g.field, F => Ok::<_, NcgError>(hh0_direct(&Algebra::<F>::from_spec(&g)?).rank))?;
    r.result = json!({ "algebra": g.name, "dim": g.dim, "additive": additive, "glued": tg.totals(), "hh0_direct": hh0 });
    if let Some(path) = emit {
        std::fs::write(path, algebra_to_json(&g))
            .map_err(|e| NcgError::Structural(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(r)
}

fn catalogue() -> Report {
    let mut r = Report::new("catalogue");
    let mut t = Table::new("algebras", &["name", "parameters", "description"]);
    for (n, p, d) in CATALOGUE {
        t.row([*n, *p, *d]);
    }
    let mut b = Table::new("bivectors", &["name", "description"]);
    for (n, d) in BIVECTOR_CATALOGUE {
        b.row([*n, *d]);
    }
    r.tables.push(t);
    r.tables.push(b);
    r.diagnostics.push("quantum_plane takes an explicit rational q; generic q is modelled by a q that is not a small root of unity".into());
    r.result = json!({ "algebras": CATALOGUE.len(), "bivectors": BIVECTOR_CATALOGUE.len() });
    r
}
