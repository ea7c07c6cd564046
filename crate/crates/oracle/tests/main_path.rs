//! The main computation path against the frozen oracle values.

use std::collections::BTreeMap;

use ncg_core::algebra::{parse_algebra_ref, Algebra};
use ncg_core::cyclic::{char_p_compare, degeneration_check, graded_piece_analysis, negative_cyclic};
use ncg_core::exactlin::{rank, FreeUComplex, SparseMatrix, SparseVec, UModuleReport, UTruncation};
use ncg_core::hochschild::{boundary, chain_basis, hh0_direct, hh_ranks, DegreeWindow};
use ncg_core::kchern::{chern_idempotent, ppower_class, ppower_lift_p2, ppower_on_hh0, Idempotent, UChain};
use ncg_core::poisson::{
    bivector_builtin, conjugation_check, exp_contract, jacobi_check, poisson_homology_ranks, star_identity_check,
    ConstantSymplectic, PolyForm,
};
use ncg_core::{FieldDescriptor, Scalar, F2, Q};
use ncg_oracle::expected;

fn alg<F: Scalar>(r: &str) -> Algebra<F> {
    Algebra::from_spec(&parse_algebra_ref(r).unwrap().resolve(Some(F::descriptor())).unwrap()).unwrap()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn rational(s: &str) -> String {
    s.strip_suffix("/1").unwrap_or(s).to_string()
}

/// Renders a form as `c*x0^2*dx1 + ...`, terms ordered by exponents then index list.
fn form<F: Scalar>(w: &PolyForm<F>) -> String {
    let mut terms = BTreeMap::new();
    for (e, mask, c) in w.terms() {
        let idx: Vec<usize> = (0..w.vars()).filter(|i| mask & (1 << i) != 0).collect();
        let mut t = rational(&ncg_core::scalar::format_rational(&c.to_rational()));
        for (i, p) in e.iter().enumerate() {
            match p {
                0 => {}
                1 => t.push_str(&format!("*x{i}")),
                _ => t.push_str(&format!("*x{i}^{p}")),
            }
        }
        for i in &idx {
            t.push_str(&format!("*dx{i}"));
        }
        terms.insert((e.clone(), idx), t);
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.into_values().collect::<Vec<_>>().join(" + ")
}

fn module(r: &UModuleReport) -> String {
    format!("free {} torsion [{}]", r.free_rank, join(&r.torsion_blocks))
}

#[test]
fn multiplication_by_u() {
    let t = UTruncation::new(3).unwrap();
    let d = vec![vec![SparseMatrix::<Q>::zeros(1, 1), SparseMatrix::identity(1)]];
    let h = FreeUComplex::new(t, vec![1, 1], d).unwrap().decompose().unwrap();
    assert_eq!(format!("0: {}; 1: {}", module(&h[0]), module(&h[1])), expected("umodule.mult_by_u.n3"));
}

#[test]
fn negative_cyclic_of_dual_numbers() {
    let a = alg::<Q>("dual_numbers");
    for (n_max, id) in [(6, "negcyc.dual_numbers.q.n3.nmax6"), (8, "negcyc.dual_numbers.q.n3.nmax8")] {
        let nc = negative_cyclic(&a, &DegreeWindow::new(n_max), 3).unwrap();
        assert_eq!(format!("even: {}; odd: {}", module(&nc.even), module(&nc.odd)), expected(id));
    }
}

#[test]
fn free_strings_of_dual_numbers() {
    let nc = negative_cyclic(&alg::<Q>("dual_numbers"), &DegreeWindow::new(8), 3).unwrap();
    let mut v = Vec::new();
    for (_, s) in nc.stable_strings().filter(|(_, s)| s.free) {
        for _ in 0..s.multiplicity {
            v.push(format!("({},{})", s.weight.unwrap(), s.start));
        }
    }
    assert_eq!(format!("free strings (weight,start): {}", v.join(" ")), expected("hodge.dual_numbers.q.n3.nmax8"));
}

#[test]
fn chain_counts_and_boundary_ranks() {
    let qp = alg::<Q>("quantum_plane:q=2,max_weight=3");
    let words = chain_basis(&qp, 1, &DegreeWindow::new(1).with_weights(2, 2)).unwrap();
    assert_eq!(words.len().to_string(), expected("chains.quantum_plane.q2.w3.n1.weight2"));
    let m2 = alg::<Q>("mat:m=2");
    let d = boundary(&m2, 1, &DegreeWindow::new(1)).unwrap();
    assert_eq!(rank(&d).to_string(), expected("boundary_rank.mat2.q.n1"));
}

#[test]
fn hochschild_ranks() {
    let w = DegreeWindow::new(4);
    assert_eq!(join(&hh_ranks(&alg::<Q>("dual_numbers"), &w).unwrap().totals()), expected("hh.dual_numbers.q.n4"));
    assert_eq!(join(&hh_ranks(&alg::<Q>("mat:m=2"), &w).unwrap().totals()), expected("hh.mat2.q.n4"));
    let r = join(&hh_ranks(&alg::<Q>("dual_numbers"), &DegreeWindow::new(3)).unwrap().totals());
    let (_, unreduced) = expected("reduced_vs_unreduced.dual_numbers.q.n3").split_once(" = ").unwrap();
    assert_eq!(r, unreduced);
}

#[test]
fn commutator_quotients() {
    assert_eq!(hh0_direct(&alg::<Q>("mat:m=2")).rank.to_string(), expected("hh0.mat2.q"));
    assert_eq!(hh0_direct(&alg::<Q>("a2_path")).rank.to_string(), expected("hh0.a2_path.q"));
    let m2 = alg::<Q>("mat:m=2");
    assert_eq!((m2.dim() - hh0_direct(&m2).rank).to_string(), expected("commutators.mat2.q"));
}

#[test]
fn degeneration_verdicts() {
    let d = degeneration_check(&alg::<Q>("dual_numbers"), &DegreeWindow::new(8), 3).unwrap();
    assert_eq!(d.verdict.to_string(), expected("degeneration.dual_numbers.q.n3.nmax8"));
    let m = degeneration_check(&alg::<Q>("mat:m=2"), &DegreeWindow::new(6), 3).unwrap();
    assert_eq!(m.verdict.to_string(), expected("degeneration.mat2.q"));
}

#[test]
fn char_p_comparison() {
    let c = char_p_compare(&alg::<F2>("dual_numbers"), &DegreeWindow::new(8), 3).unwrap();
    let mut by_weight: BTreeMap<i64, [usize; 4]> = BTreeMap::new();
    for s in &c.slots {
        let e = by_weight.entry(s.weight.unwrap()).or_default();
        e[s.parity as usize] = s.periodic;
        e[2 + s.parity as usize] = s.hochschild_frobenius;
    }
    let parts: Vec<String> = by_weight
        .iter()
        .filter(|(w, _)| **w <= 8)
        .map(|(w, r)| format!("w{w} ({},{})/({},{})", r[0], r[1], r[2], r[3]))
        .collect();
    let verdict = if c.all_agree { "agree" } else { "disagree" };
    assert_eq!(format!("{}; {verdict}", parts.join(" ")), expected("charp.dual_numbers.f2.n3.nmax8"));
}

#[test]
fn graded_piece() {
    let g = graded_piece_analysis(1, 2, FieldDescriptor::Prime(2)).unwrap();
    let v = (g.ker_one_minus_sigma_mod_norm, g.ker_norm_mod_one_minus_sigma);
    assert_eq!(format!("{v:?}"), expected("graded.v1.n2.p2"));
}

#[test]
fn chern_character_of_e11() {
    let m2 = alg::<Q>("mat:m=2");
    let ch = chern_idempotent(&m2, &Idempotent::new(&m2, SparseVec::unit(1)).unwrap(), 3).unwrap();
    assert!(ch.cycle && ch.hh0_nonzero);
    assert_eq!(expected("chern.mat2.e11.q.n3"), "cycle; trace 1");
}

#[test]
fn p_power_on_mat2() {
    let m2 = alg::<F2>("mat:m=2");
    let r = ppower_on_hh0(&m2).unwrap();
    let e12 = ppower_class(&m2, &SparseVec::unit(2)).unwrap();
    let sq = if e12.is_zero() { "0" } else { "nonzero" };
    assert_eq!(format!("hh0 rank {}; e12^2 = {sq}", r.hh0_rank), expected("ppower.mat2.f2"));
}

fn chain_text(c: &[(Vec<usize>, String)]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(|(w, x)| format!("{}[{}]", rational(x), join(w))).collect::<Vec<_>>().join(" + ")
}

#[test]
fn p2_lift_of_epsilon() {
    let a = alg::<F2>("dual_numbers");
    let l = ppower_lift_p2(&a, &SparseVec::unit(1)).unwrap();
    let t = l.lift.describe();
    let cycle = if l.cycle { "cycle" } else { "not a cycle" };
    assert_eq!(format!("u^0: {}; u^1: {}; {cycle}", chain_text(&t[0]), chain_text(&t[1])), expected("lift.dual_numbers.f2.eps"));
}

#[test]
fn p2_lift_is_additive_on_mat2() {
    let a = alg::<F2>("mat:m=2");
    let lift = |v: SparseVec<F2>| -> UChain<F2> { ppower_lift_p2(&a, &v).unwrap().lift };
    let mut pairs = 0;
    let mut all = true;
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let sum = SparseVec::unit(i).add(&SparseVec::unit(j));
            let diff = lift(sum).sub(&lift(SparseVec::unit(i))).sub(&lift(SparseVec::unit(j)));
            all &= diff.is_boundary_mod_u2(&a).unwrap();
            pairs += 1;
        }
    }
    let verdict = if all { "all boundaries mod u^2" } else { "some pair is not a boundary" };
    assert_eq!(format!("{pairs} pairs; {verdict}"), expected("lift.mat2.f2.additivity"));
}

#[test]
fn jacobi_fixtures() {
    let so3 = bivector_builtin::<Q>("so3").unwrap();
    assert!(jacobi_check(&so3, 1).passes);
    assert_eq!(expected("poisson.jacobi.so3"), "0 on all coordinate triples");
    let bad = bivector_builtin::<Q>("nonjacobi4").unwrap();
    let r = jacobi_check(&bad, 1);
    let w = r.witness.expect("witness");
    let name = |s: &str| (0..4).find(|&i| PolyForm::<Q>::coordinate(4, i).to_string() == s).map(|i| format!("x{i}")).unwrap();
    let j = PolyForm::<Q>::constant(4, Q::from_i64(-1));
    assert_eq!(w.jacobiator, j.to_string());
    assert_eq!(
        format!("J({},{},{}) = {}", name(&w.f), name(&w.g), name(&w.h), form(&j)),
        expected("poisson.jacobi.nonjacobi4")
    );
}

#[test]
fn lie_derivative_fixtures() {
    let a = bivector_builtin::<Q>("plane").unwrap();
    let x = PolyForm::<Q>::coordinate(2, 0);
    let x_dy = x.wedge(&PolyForm::dx(2, 1));
    assert_eq!(form(&a.lie_derivative(&x_dy)), expected("poisson.lie.plane.x_dy"));
    let x_dxdy = x.wedge(&PolyForm::dx(2, 0)).wedge(&PolyForm::dx(2, 1));
    assert_eq!(form(&a.lie_derivative(&x_dxdy)), expected("poisson.lie.plane.x_dxdy"));
}

#[test]
fn conjugation_fails_without_jacobi() {
    let a = bivector_builtin::<Q>("nonjacobi4").unwrap();
    assert!(!conjugation_check(&a, 2).unwrap().passes);
    let w = PolyForm::<Q>::dx(4, 1).wedge(&PolyForm::dx(4, 2)).wedge(&PolyForm::dx(4, 3));
    let left = exp_contract(&a, &exp_contract(&a, &w, true).unwrap().d(), false).unwrap();
    let right = w.d().add(&a.lie_derivative(&w));
    assert_ne!(left, right);
    assert_eq!(format!("fails on {}", form(&w)), expected("poisson.conjugation.nonjacobi4.d2"));
}

#[test]
fn star_fixtures() {
    for (pairs, d, id) in [(1, 6, "poisson.star.v2.d6"), (2, 4, "poisson.star.v4.d4")] {
        let r = star_identity_check::<Q>(&ConstantSymplectic::new(pairs), d).unwrap();
        let word = |ok: bool| if ok { "passes" } else { "fails" };
        let s = format!(
            "*(dx∧dy)=-1: {}; *(dx∧dy)=+1: {}; e^ι * e^ι with -1: {}",
            word(r.literal_passes),
            word(r.literal_passes_other_sign),
            word(r.symmetric_passes)
        );
        assert_eq!(s, expected(id));
    }
}

#[test]
fn poisson_homology_fixtures() {
    for (name, id) in [
        ("plane", "poisson.homology.plane.d6"),
        ("zero:vars=2", "poisson.homology.zero2.d6"),
        ("zero:vars=0", "poisson.homology.zero0.d6"),
    ] {
        let h = poisson_homology_ranks(&bivector_builtin::<Q>(name).unwrap(), 6).unwrap();
        assert_eq!(format!("({},{})", h.even, h.odd), expected(id));
    }
}
