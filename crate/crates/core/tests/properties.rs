use ncg_core::algebra::{algebra_from_json, algebra_to_json, parse_algebra_ref, Algebra};
use ncg_core::cyclic::hp_ranks;
use ncg_core::exactlin::{kernel_basis, rank, FreeUComplex, SparseMatrix, UTruncation};
use ncg_core::hochschild::DegreeWindow;
use ncg_core::poisson::{bivector_builtin, monomial_forms, Bivector, PolyForm};
use ncg_core::{Scalar, F5, Q};
use proptest::prelude::*;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, cols), rows)
}

fn to_q(m: &[Vec<i64>]) -> SparseMatrix<Q> {
    SparseMatrix::from_dense(&m.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_ignores_permutations(m in small_matrix(5, 6), seed in 0usize..720) {
        let a = to_q(&m);
        let mut rows: Vec<usize> = (0..5).collect();
        let mut cols: Vec<usize> = (0..6).collect();
        rows.rotate_left(seed % 5);
        cols.swap(seed % 6, (seed / 6) % 6);
        prop_assert_eq!(rank(&a), rank(&a.permute(&rows, &cols).unwrap()));
    }

    #[test]
    fn rank_plus_nullity(m in small_matrix(4, 7)) {
        let a = to_q(&m);
        let k = kernel_basis(&a);
        prop_assert_eq!(rank(&a) + k.len(), 7);
        for v in &k {
            prop_assert!(a.apply(v).is_zero());
        }
    }

    #[test]
    fn rank_over_f5_matches_transpose(m in small_matrix(4, 5)) {
        let rows: Vec<Vec<F5>> = m.iter().map(|r| r.iter().map(|&x| F5::from_i64(x)).collect()).collect();
        let a = SparseMatrix::from_dense(&rows).unwrap();
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }
}

/// `(k[u]/u^N)^r --D--> (k[u]/u^N)^r` with `D = P diag(u^{a_i}) Q`, `P`, `Q` invertible.
fn scrambled(exps: &[usize], n: usize, p: &[i64], q: &[i64]) -> FreeUComplex<Q> {
    let r = exps.len();
    // unit lower triangular P and unit upper triangular Q, entries from the seeds
    let lower = |seed: &[i64]| {
        let mut m = vec![vec![Q::from_i64(0); r]; r];
        for i in 0..r {
            m[i][i] = Q::from_i64(1);
            for j in 0..i {
                m[i][j] = Q::from_i64(seed[(i * r + j) % seed.len()]);
            }
        }
        SparseMatrix::from_dense(&m).unwrap()
    };
    let pm = lower(p);
    let qm = lower(q).transpose();
    let mut d = Vec::new();
    for j in 0..n {
        let trip = (0..r).filter(|&i| exps[i] == j).map(|i| (i, i, Q::from_i64(1)));
        let e = SparseMatrix::from_triplets(r, r, trip).unwrap();
        d.push(pm.mul(&e).unwrap().mul(&qm).unwrap());
    }
    FreeUComplex::new(UTruncation::new(n).unwrap(), vec![r, r], vec![d]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn u_module_type_survives_change_of_basis(
        exps in proptest::collection::vec(0usize..=3, 1..5),
        p in proptest::collection::vec(-3i64..=3, 1..20),
        q in proptest::collection::vec(-3i64..=3, 1..20),
    ) {
        let n = 3;
        let h = scrambled(&exps, n, &p, &q).decompose().unwrap();
        let mut torsion: Vec<usize> = exps.iter().copied().filter(|&a| a > 0 && a < n).collect();
        torsion.sort_unstable();
        let free = exps.iter().filter(|&&a| a >= n).count();
        for pos in &h {
            prop_assert_eq!(pos.free_rank, free);
            prop_assert_eq!(&pos.torsion_blocks, &torsion);
        }
    }
}

fn poly(vars: usize, coeffs: &[i64]) -> PolyForm<Q> {
    // dense cubic: coefficients cycle over the monomials of degree <= 3
    let monos = monomial_forms::<Q>(vars, 3);
    let mut f = PolyForm::zero(vars);
    for (k, m) in monos.iter().filter(|m| m.form_degrees() == vec![0]).enumerate() {
        let c = coeffs[k % coeffs.len()];
        f = f.add(&m.scale(&Q::from_i64(c)));
    }
    f
}

fn linear_bivector(vars: usize, seed: &[i64]) -> Bivector<Q> {
    let mut a = Bivector::zero(vars);
    let mut k = 0;
    for i in 0..vars {
        for j in i + 1..vars {
            let mut f = PolyForm::constant(vars, Q::from_i64(seed[k % seed.len()]));
            k += 1;
            for l in 0..vars {
                f = f.add(&PolyForm::coordinate(vars, l).scale(&Q::from_i64(seed[k % seed.len()])));
                k += 1;
            }
            a.add_component(i, j, f).unwrap();
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(
        a in proptest::collection::vec(-2i64..=2, 1..12),
        b in proptest::collection::vec(-2i64..=2, 1..12),
        c in proptest::collection::vec(-2i64..=2, 1..12),
        s in proptest::collection::vec(-2i64..=2, 1..12),
    ) {
        let alpha = linear_bivector(3, &s);
        let (f, g, h) = (poly(3, &a), poly(3, &b), poly(3, &c));
        prop_assert_eq!(alpha.bracket(&f, &g), alpha.bracket(&g, &f).scale(&Q::from_i64(-1)));
        let left = alpha.bracket(&f, &g.wedge(&h));
        let right = alpha.bracket(&f, &g).wedge(&h).add(&g.wedge(&alpha.bracket(&f, &h)));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn contraction_lowers_degree_by_two(s in proptest::collection::vec(-2i64..=2, 1..12)) {
        let alpha = linear_bivector(3, &s);
        for w in monomial_forms::<Q>(3, 1) {
            let k = w.form_degrees()[0];
            let c = alpha.contract(&w);
            prop_assert!(c.is_zero() || c.form_degrees() == vec![k - 2]);
            prop_assert!(w.d().d().is_zero());
        }
    }

    #[test]
    fn brylinski_conditions_for_scaled_poisson_bivectors(h in 1i64..5) {
        for name in ["plane", "xy_plane", "so3", "symplectic:pairs=2"] {
            let a = bivector_builtin::<Q>(name).unwrap().with_hbar(Q::from_i64(h));
            for w in monomial_forms::<Q>(a.vars(), 2) {
                prop_assert!(a.lie_derivative(&w.d()).add(&a.lie_derivative(&w).d()).is_zero(), "{}", name);
                prop_assert!(a.lie_derivative(&a.lie_derivative(&w)).is_zero(), "{}", name);
            }
        }
    }

    #[test]
    fn quantum_plane_json_round_trip(q in 2i64..9, w in 1usize..4) {
        let spec = parse_algebra_ref(&format!("quantum_plane:q={q},max_weight={w}")).unwrap().resolve(None).unwrap();
        let back = algebra_from_json(&algebra_to_json(&spec)).unwrap();
        prop_assert_eq!(spec, back);
    }
}

#[test]
fn periodic_ranks_are_stable_in_n() {
    for name in ["point", "dual_numbers", "truncated_poly:m=3", "clifford1", "diag:n=2"] {
        let a = Algebra::<Q>::from_spec(&parse_algebra_ref(name).unwrap().resolve(None).unwrap()).unwrap();
        let at3 = hp_ranks(&a, &DegreeWindow::new(8), 3).unwrap();
        let at4 = hp_ranks(&a, &DegreeWindow::new(8), 4).unwrap();
        assert!(at3.conclusive && at4.conclusive, "{name}");
        assert_eq!((at3.even, at3.odd), (at4.even, at4.odd), "{name}");
    }
}
