use ncg_core::algebra::{algebra_to_json, parse_algebra_ref, AlgebraSpec};
use ncg_core::FieldDescriptor;
use num_rational::BigRational;
use num_traits::Zero;

use crate::dense::{self, Dense};
use crate::field::{show, El, Kf};
use crate::forms::{self, Biv, Form};
use crate::hoch::{Alg, Chain, Word};
use crate::umod;

pub type Outcome = Result<String, String>;

pub struct Fixture {
    pub id: &'static str,
    /// Canonical description of the inputs, hashed into the result.
    pub inputs: fn() -> String,
    pub compute: fn() -> Outcome,
}

fn spec(name: &str, k: Kf) -> AlgebraSpec {
    let field = if k.p == 0 { FieldDescriptor::Rationals } else { FieldDescriptor::Prime(k.p) };
    parse_algebra_ref(name).and_then(|r| r.resolve(Some(field))).expect("catalogue algebra")
}

fn alg(name: &str, k: Kf) -> Result<Alg, String> {
    Alg::new(&spec(name, k), k)
}

fn algebra_inputs(name: &str, k: Kf, params: &str) -> String {
    format!("{}\n{params}", algebra_to_json(&spec(name, k)))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Jordan type of `u` on `Z / B`, where `u` acts on coordinates by `shift`.
fn blocks(k: Kf, z: &[Vec<El>], b: &[Vec<El>], shift: impl Fn(&[El]) -> Vec<El>, n: usize) -> Vec<usize> {
    let base = dense::rank(k, b.to_vec());
    let r = |j: usize| {
        let mut rows = b.to_vec();
        for v in z {
            let mut w = v.clone();
            for _ in 0..j {
                w = shift(&w);
            }
            rows.push(w);
        }
        dense::rank(k, rows) - base
    };
    // blocks of length >= len
    let at_least = |len: usize| if len > n { 0 } else { r(len - 1) - r(len) };
    let mut out = Vec::new();
    for len in 1..=n {
        out.extend(std::iter::repeat_n(len, at_least(len) - at_least(len + 1)));
    }
    out
}

fn mult_by_u() -> Outcome {
    let k = Kf::Q;
    let n = 3;
    let shift = |v: &[El]| {
        let mut w = vec![El::zero(); n];
        for i in 0..n - 1 {
            w[i + 1] = v[i].clone();
        }
        w
    };
    let mut d: Dense = dense::zeros(n, n);
    for i in 0..n - 1 {
        d[i + 1][i] = k.one();
    }
    let z0 = dense::kernel(k, d.clone(), n);
    let b1: Vec<Vec<El>> = (0..n).map(|c| d.iter().map(|row| row[c].clone()).collect()).collect();
    let all: Vec<Vec<El>> = (0..n).map(|i| (0..n).map(|j| if i == j { k.one() } else { El::zero() }).collect()).collect();
    let describe = |bl: Vec<usize>| {
        let free = bl.iter().filter(|&&l| l == n).count();
        let torsion: Vec<usize> = bl.into_iter().filter(|&l| l < n).collect();
        format!("free {free} torsion [{}]", join(&torsion))
    };
    Ok(format!(
        "0: {}; 1: {}",
        describe(blocks(k, &z0, &[], shift, n)),
        describe(blocks(k, &all, &b1, shift, n))
    ))
}

type Counts = ([usize; 2], [Vec<usize>; 2]);

/// Strings of every weight `0..=n_max`, grouped by parity of the start degree.
fn negcyc_counts(name: &str, k: Kf, nn: usize, n_max: usize) -> Result<Counts, String> {
    let a = alg(name, k)?;
    let mut free = [0usize; 2];
    let mut torsion: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for w in 0..=n_max as i64 {
        let s = umod::strings(&a, w, n_max, nn, true).ok_or_else(|| format!("weight {w} is not finite"))?;
        for (start, len) in s {
            let p = start.rem_euclid(2) as usize;
            if len == nn {
                free[p] += 1;
            } else {
                torsion[p].push(len);
            }
        }
    }
    torsion.iter_mut().for_each(|t| t.sort_unstable());
    Ok((free, torsion))
}

fn negcyc_summary(name: &str, k: Kf, nn: usize, n_max: usize) -> Outcome {
    let (free, torsion) = negcyc_counts(name, k, nn, n_max)?;
    Ok(format!(
        "even: free {} torsion [{}]; odd: free {} torsion [{}]",
        free[0],
        join(&torsion[0]),
        free[1],
        join(&torsion[1])
    ))
}

fn free_strings(name: &str, k: Kf, nn: usize, n_max: usize) -> Outcome {
    let a = alg(name, k)?;
    let mut out = Vec::new();
    for w in 0..=n_max as i64 {
        let s = umod::strings(&a, w, n_max, nn, true).ok_or_else(|| format!("weight {w} is not finite"))?;
        out.extend(s.into_iter().filter(|&(_, l)| l == nn).map(|(m, _)| format!("({w},{m})")));
    }
    Ok(format!("free strings (weight,start): {}", out.join(" ")))
}

fn degeneration_dual() -> Outcome {
    let (_, torsion) = negcyc_counts("dual_numbers", Kf::Q, 3, 8)?;
    Ok(if torsion.iter().any(|t| !t.is_empty()) { "finite-torsion-found".into() } else { "collapses-in-window".into() })
}

/// `HH_n(Mat_2) = 0` for `1 <= n <= 4` leaves nothing for higher `u`-blocks to hit.
fn degeneration_mat2() -> Outcome {
    let r = alg("mat:m=2", Kf::Q)?.hh_ranks(4, true);
    Ok(if r[1..].iter().all(|&x| x == 0) { "collapses-in-window".into() } else { "not collapsed".into() })
}

fn charp_dual() -> Outcome {
    let k = Kf::prime(2);
    let a = alg("dual_numbers", k)?;
    let free = |w: i64, with_b: bool| -> Result<[usize; 2], String> {
        let mut f = [0usize; 2];
        for (m, l) in umod::strings(&a, w, 8, 3, with_b).ok_or("not finite")? {
            if l == 3 {
                f[m.rem_euclid(2) as usize] += 1;
            }
        }
        Ok(f)
    };
    let mut parts = Vec::new();
    let mut agree = true;
    for w in 0..=8i64 {
        let per = free(w, true)?;
        let hh = if w % 2 == 0 { free(w / 2, false)? } else { [0, 0] };
        agree &= per == hh;
        parts.push(format!("w{w} ({},{})/({},{})", per[0], per[1], hh[0], hh[1]));
    }
    Ok(format!("{}; {}", parts.join(" "), if agree { "agree" } else { "disagree" }))
}

/// `(ker(1-σ)/im N, ker N/im(1-σ))` for the signed rotation on `V^{⊗n}`.
fn graded_piece(dim_v: usize, n: usize, p: u64) -> (usize, usize) {
    let k = Kf::prime(p);
    let total = dim_v.pow(n as u32);
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; n];
        for i in (0..n).rev() {
            d[i] = x % dim_v;
            x /= dim_v;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * dim_v + x);
    let sign = if n % 2 == 0 { k.int(-1) } else { k.one() };
    let mut sigma = dense::zeros(total, total);
    for x in 0..total {
        let mut d = digits(x);
        d.rotate_right(1);
        sigma[undigits(&d)][x] = sign.clone();
    }
    let mul = |a: &Dense, b: &Dense| -> Dense {
        let mut c = dense::zeros(total, total);
        for i in 0..total {
            for j in 0..total {
                for l in 0..total {
                    if !a[i][l].is_zero() && !b[l][j].is_zero() {
                        c[i][j] = k.add(&c[i][j], &k.mul(&a[i][l], &b[l][j]));
                    }
                }
            }
        }
        c
    };
    let mut one_minus = dense::zeros(total, total);
    let mut norm = dense::zeros(total, total);
    let mut power = dense::zeros(total, total);
    for i in 0..total {
        power[i][i] = k.one();
    }
    for _ in 0..n {
        for i in 0..total {
            for j in 0..total {
                norm[i][j] = k.add(&norm[i][j], &power[i][j]);
            }
        }
        power = mul(&sigma, &power);
    }
    for i in 0..total {
        for j in 0..total {
            let id = if i == j { k.one() } else { El::zero() };
            one_minus[i][j] = k.sub(&id, &sigma[i][j]);
        }
    }
    let r1 = dense::rank(k, one_minus);
    let rn = dense::rank(k, norm);
    (total - r1 - rn, total - rn - r1)
}

fn add_chain(k: Kf, c: &mut Chain, other: &Chain, s: &El) {
    for (w, x) in other {
        let e = c.entry(w.clone()).or_insert_with(El::zero);
        *e = k.add(e, &k.mul(s, x));
        if e.is_zero() {
            c.remove(w);
        }
    }
}

/// `(b + uB)` on `Σ_k c_k u^k`, mod `u^N`.
fn apply_d(a: &Alg, terms: &[Chain]) -> Vec<Chain> {
    let k = a.k;
    let mut out = vec![Chain::new(); terms.len()];
    for (i, t) in terms.iter().enumerate() {
        for (w, x) in t {
            add_chain(k, &mut out[i], &a.b(w, true), x);
            if i + 1 < terms.len() {
                add_chain(k, &mut out[i + 1], &a.connes(w), x);
            }
        }
    }
    out
}

/// Expands `x0 ⊗ y ⊗ .. ⊗ y` into reduced words.
fn tensor(a: &Alg, x0: &[El], y: &[El], len: usize) -> Chain {
    let k = a.k;
    let mut acc: Chain = Chain::new();
    for (i, c) in x0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        acc.insert(vec![i], c.clone());
    }
    for _ in 0..len {
        let mut next = Chain::new();
        for (w, c) in &acc {
            for (i, d) in y.iter().enumerate() {
                if i == a.unit || d.is_zero() {
                    continue;
                }
                let mut v: Word = w.clone();
                v.push(i);
                let e = next.entry(v).or_insert_with(El::zero);
                *e = k.add(e, &k.mul(c, d));
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    acc
}

fn chern_e11() -> Outcome {
    let k = Kf::Q;
    let a = alg("mat:m=2", k)?;
    let mut pi = vec![El::zero(); a.dim];
    pi[1] = k.one();
    let mut shifted = pi.clone();
    shifted[a.unit] = k.sub(&shifted[a.unit], &BigRational::new(1.into(), 2.into()));
    // ch = π + Σ_{k>=1} (-1)^k (2k)!/k! (π - 1/2) ⊗ π^{⊗2k} u^k
    let mut terms = vec![tensor(&a, &pi, &pi, 0)];
    for kk in 1..3i64 {
        let fact = |n: i64| (1..=n).product::<i64>();
        let c = k.int(if kk % 2 == 0 { 1 } else { -1 } * fact(2 * kk) / fact(kk));
        let mut t = Chain::new();
        add_chain(k, &mut t, &tensor(&a, &shifted, &pi, 2 * kk as usize), &c);
        terms.push(t);
    }
    let cycle = apply_d(&a, &terms).iter().all(|c| c.is_empty());
    // trace of e_11 is 1, and the trace kills commutators
    Ok(format!("{}; trace {}", if cycle { "cycle" } else { "not a cycle" }, 1))
}

fn ppower_mat2() -> Outcome {
    let k = Kf::prime(2);
    let a = alg("mat:m=2", k)?;
    let rank = a.dim - a.commutator_rank();
    let mut e12 = vec![El::zero(); a.dim];
    e12[2] = k.one();
    let sq = a.element_mul(&e12, &e12);
    Ok(format!("hh0 rank {rank}; e12^2 = {}", if sq.iter().all(|x| x.is_zero()) { "0" } else { "nonzero" }))
}

/// `a² + (1 ⊗ a ⊗ a) u` for a basis element `a`.
fn lift(a: &Alg, i: usize) -> Vec<Chain> {
    let k = a.k;
    let mut x = vec![El::zero(); a.dim];
    x[i] = k.one();
    let sq = a.element_mul(&x, &x);
    let mut one = vec![El::zero(); a.dim];
    one[a.unit] = k.one();
    vec![tensor(a, &sq, &x, 0), tensor(a, &one, &x, 2)]
}

fn show_chain(k: Kf, c: &Chain) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(|(w, x)| format!("{}[{}]", show(k, x), join(w))).collect::<Vec<_>>().join(" + ")
}

fn lift_dual() -> Outcome {
    let a = alg("dual_numbers", Kf::prime(2))?;
    let l = lift(&a, 1);
    let cycle = apply_d(&a, &l).iter().all(|c| c.is_empty());
    Ok(format!(
        "u^0: {}; u^1: {}; {}",
        show_chain(a.k, &l[0]),
        show_chain(a.k, &l[1]),
        if cycle { "cycle" } else { "not a cycle" }
    ))
}

/// `lift(a+b) - lift(a) - lift(b)` lies in the image of `b + uB` mod `u²`.
fn lift_mat2_additivity() -> Outcome {
    let k = Kf::prime(2);
    let a = alg("mat:m=2", k)?;
    let w: Vec<Vec<Word>> = (0..=3).map(|n| a.words(n, true, None)).collect();
    // sources C_1 ⊕ u C_3, targets C_0 ⊕ u C_2
    let (s1, s3, t0, t2) = (&w[1], &w[3], &w[0], &w[2]);
    let rows = t0.len() + t2.len();
    let mut image: Vec<Vec<El>> = Vec::new();
    let pos = |ws: &[Word], v: &Word| ws.iter().position(|x| x == v).expect("word");
    for src in s1 {
        let mut col = vec![El::zero(); rows];
        for (v, x) in a.b(src, true) {
            col[pos(t0, &v)] = x;
        }
        for (v, x) in a.connes(src) {
            let r = t0.len() + pos(t2, &v);
            col[r] = k.add(&col[r], &x);
        }
        image.push(col);
    }
    for src in s3 {
        let mut col = vec![El::zero(); rows];
        for (v, x) in a.b(src, true) {
            col[t0.len() + pos(t2, &v)] = x;
        }
        image.push(col);
    }
    let base = dense::rank(k, image.clone());
    let two = |i: usize, j: usize| -> Vec<Chain> {
        let mut x = vec![El::zero(); a.dim];
        x[i] = k.add(&x[i], &k.one());
        x[j] = k.add(&x[j], &k.one());
        let sq = a.element_mul(&x, &x);
        let mut one = vec![El::zero(); a.dim];
        one[a.unit] = k.one();
        vec![tensor(&a, &sq, &x, 0), tensor(&a, &one, &x, 2)]
    };
    let mut pairs = 0;
    let mut all = true;
    for i in 0..a.dim {
        for j in i..a.dim {
            let mut diff = two(i, j);
            for c in [lift(&a, i), lift(&a, j)] {
                for (t, s) in diff.iter_mut().zip(&c) {
                    add_chain(k, t, s, &k.int(-1));
                }
            }
            let mut v = vec![El::zero(); rows];
            for (wd, x) in &diff[0] {
                v[pos(t0, wd)] = x.clone();
            }
            for (wd, x) in &diff[1] {
                v[t0.len() + pos(t2, wd)] = x.clone();
            }
            let mut m = image.clone();
            m.push(v);
            all &= dense::rank(k, m) == base;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs; {}", if all { "all boundaries mod u^2" } else { "some pair is not a boundary" }))
}

fn constant(vars: usize) -> Form {
    forms::mono(vec![0; vars], vec![])
}

fn coord(vars: usize, i: usize) -> Form {
    let mut e = vec![0; vars];
    e[i] = 1;
    forms::mono(e, vec![])
}

fn plane() -> Biv {
    Biv { vars: 2, comps: vec![(0, 1, constant(2))] }
}

fn so3() -> Biv {
    // x3 ∂1∧∂2 + x1 ∂2∧∂3 + x2 ∂3∧∂1
    Biv { vars: 3, comps: vec![(0, 1, coord(3, 2)), (1, 2, coord(3, 0)), (2, 0, coord(3, 1))] }
}

fn nonjacobi4() -> Biv {
    Biv { vars: 4, comps: vec![(0, 1, constant(4)), (2, 3, coord(4, 0))] }
}

fn first_jacobiator(b: &Biv) -> String {
    for i in 0..b.vars {
        for j in i + 1..b.vars {
            for l in j + 1..b.vars {
                let jac = b.jacobiator(i, j, l);
                if !jac.is_empty() {
                    return format!("J(x{i},x{j},x{l}) = {}", forms::show(&jac));
                }
            }
        }
    }
    "0 on all coordinate triples".into()
}

fn lie_fixture(e: Vec<u32>, idx: Vec<usize>) -> Outcome {
    Ok(forms::show(&plane().lie(&forms::mono(e, idx))))
}

fn conjugation_nonjacobi() -> Outcome {
    let b = nonjacobi4();
    for w in forms::monomials(4, 2) {
        let left = b.exp_iota(&forms::d(&b.exp_iota(&w, -1)), 1);
        let right = forms::sum(&forms::d(&w), &b.lie(&w), 1);
        if left != right {
            return Ok(format!("fails on {}", forms::show(&w)));
        }
    }
    Ok("passes".into())
}

/// Per pair `1 ↦ dx∧dy`, `dx∧dy ↦ sign`, `dx ↦ dx`, `dy ↦ dy`, assembled by wedging.
fn star(pairs: usize, w: &Form, sign: i64) -> Form {
    let vars = 2 * pairs;
    let mut out = Form::new();
    for ((e, s), c) in w {
        let mut acc = forms::mono(e.clone(), vec![]);
        for i in 0..pairs {
            let (x, y) = (2 * i, 2 * i + 1);
            let piece = match (s.contains(&x), s.contains(&y)) {
                (false, false) => forms::mono(vec![0; vars], vec![x, y]),
                (true, true) => forms::scale(&constant(vars), &BigRational::from_integer(sign.into())),
                (true, false) => forms::mono(vec![0; vars], vec![x]),
                (false, true) => forms::mono(vec![0; vars], vec![y]),
            };
            acc = forms::wedge(&acc, &piece);
        }
        out = forms::sum(&out, &forms::scale(&acc, c), 1);
    }
    out
}

fn star_fixture(pairs: usize, deg: u32) -> Outcome {
    let vars = 2 * pairs;
    let mut omega = Form::new();
    let mut comps = Vec::new();
    for i in 0..pairs {
        omega = forms::sum(&omega, &forms::mono(vec![0; vars], vec![2 * i, 2 * i + 1]), 1);
        comps.push((2 * i, 2 * i + 1, constant(vars)));
    }
    let b = Biv { vars, comps };
    let monos = forms::monomials(vars, deg);
    let holds = |sign: i64, second: i64| {
        monos.iter().all(|w| {
            let left = forms::series(w, |x| forms::wedge(&omega, x));
            let right = b.exp_iota(&star(pairs, &b.exp_iota(w, second), sign), 1);
            left == right
        })
    };
    let word = |ok: bool| if ok { "passes" } else { "fails" };
    Ok(format!(
        "*(dx∧dy)=-1: {}; *(dx∧dy)=+1: {}; e^ι * e^ι with -1: {}",
        word(holds(-1, -1)),
        word(holds(1, -1)),
        word(holds(-1, 1))
    ))
}

fn homology_fixture(b: Biv, deg: u32) -> Outcome {
    let (e, o) = forms::folded_ranks(&b, deg, 2);
    Ok(format!("({e},{o})"))
}

fn chain_count() -> Outcome {
    let a = alg("quantum_plane:q=2,max_weight=3", Kf::Q)?;
    Ok(a.words(1, true, Some(2)).len().to_string())
}

fn boundary_rank_mat2() -> Outcome {
    let a = alg("mat:m=2", Kf::Q)?;
    let (w1, w0) = (a.words(1, true, None), a.words(0, true, None));
    Ok(dense::rank(a.k, a.matrix(&w1, &w0, |w| a.b(w, true))).to_string())
}

fn reduced_vs_unreduced() -> Outcome {
    let a = alg("dual_numbers", Kf::Q)?;
    Ok(format!("{} = {}", join(&a.hh_ranks(3, true)), join(&a.hh_ranks(3, false))))
}

fn hh0(name: &str) -> Outcome {
    let a = alg(name, Kf::Q)?;
    Ok((a.dim - a.commutator_rank()).to_string())
}

fn biv_inputs(name: &str, deg: u32) -> String {
    format!("bivector {name}\ndegree bound {deg}")
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { id: "umodule.mult_by_u.n3", inputs: || "k[u]/u^3 -u-> k[u]/u^3 over Q".into(), compute: mult_by_u },
    Fixture {
        id: "negcyc.dual_numbers.q.n3.nmax6",
        inputs: || algebra_inputs("dual_numbers", Kf::Q, "N=3 n_max=6"),
        compute: || negcyc_summary("dual_numbers", Kf::Q, 3, 6),
    },
    Fixture {
        id: "negcyc.dual_numbers.q.n3.nmax8",
        inputs: || algebra_inputs("dual_numbers", Kf::Q, "N=3 n_max=8"),
        compute: || negcyc_summary("dual_numbers", Kf::Q, 3, 8),
    },
    Fixture {
        id: "chains.quantum_plane.q2.w3.n1.weight2",
        inputs: || algebra_inputs("quantum_plane:q=2,max_weight=3", Kf::Q, "n=1 weight=2 reduced"),
        compute: chain_count,
    },
    Fixture {
        id: "boundary_rank.mat2.q.n1",
        inputs: || algebra_inputs("mat:m=2", Kf::Q, "n=1"),
        compute: boundary_rank_mat2,
    },
    Fixture {
        id: "hh.dual_numbers.q.n4",
        inputs: || algebra_inputs("dual_numbers", Kf::Q, "n<=4 reduced"),
        compute: || Ok(join(&alg("dual_numbers", Kf::Q)?.hh_ranks(4, true))),
    },
    Fixture {
        id: "hh.mat2.q.n4",
        inputs: || algebra_inputs("mat:m=2", Kf::Q, "n<=4 reduced"),
        compute: || Ok(join(&alg("mat:m=2", Kf::Q)?.hh_ranks(4, true))),
    },
    Fixture {
        id: "reduced_vs_unreduced.dual_numbers.q.n3",
        inputs: || algebra_inputs("dual_numbers", Kf::Q, "n<=3 reduced and unreduced"),
        compute: reduced_vs_unreduced,
    },
    Fixture { id: "hh0.mat2.q", inputs: || algebra_inputs("mat:m=2", Kf::Q, "A/[A,A]"), compute: || hh0("mat:m=2") },
    Fixture { id: "hh0.a2_path.q", inputs: || algebra_inputs("a2_path", Kf::Q, "A/[A,A]"), compute: || hh0("a2_path") },
    Fixture {
        id: "commutators.mat2.q",
        inputs: || algebra_inputs("mat:m=2", Kf::Q, "span of commutators"),
        compute: || Ok(alg("mat:m=2", Kf::Q)?.commutator_rank().to_string()),
    },
    Fixture {
        id: "hodge.dual_numbers.q.n3.nmax8",
        inputs: || algebra_inputs("dual_numbers", Kf::Q, "N=3 n_max=8 free strings"),
        compute: || free_strings("dual_numbers", Kf::Q, 3, 8),
    },
    Fixture {
        id: "degeneration.dual_numbers.q.n3.nmax8",
        inputs: || algebra_inputs("dual_numbers", Kf::Q, "N=3 n_max=8"),
        compute: degeneration_dual,
    },
    Fixture {
        id: "degeneration.mat2.q",
        inputs: || algebra_inputs("mat:m=2", Kf::Q, "HH n<=4"),
        compute: degeneration_mat2,
    },
    Fixture {
        id: "charp.dual_numbers.f2.n3.nmax8",
        inputs: || algebra_inputs("dual_numbers", Kf::prime(2), "N=3 n_max=8"),
        compute: charp_dual,
    },
    Fixture {
        id: "graded.v1.n2.p2",
        inputs: || "dim V=1 n=2 p=2".into(),
        compute: || Ok(format!("{:?}", graded_piece(1, 2, 2))),
    },
    Fixture {
        id: "chern.mat2.e11.q.n3",
        inputs: || algebra_inputs("mat:m=2", Kf::Q, "pi=e11 N=3"),
        compute: chern_e11,
    },
    Fixture {
        id: "ppower.mat2.f2",
        inputs: || algebra_inputs("mat:m=2", Kf::prime(2), "p=2"),
        compute: ppower_mat2,
    },
    Fixture {
        id: "lift.dual_numbers.f2.eps",
        inputs: || algebra_inputs("dual_numbers", Kf::prime(2), "a=e1"),
        compute: lift_dual,
    },
    Fixture {
        id: "lift.mat2.f2.additivity",
        inputs: || algebra_inputs("mat:m=2", Kf::prime(2), "pairs of basis elements"),
        compute: lift_mat2_additivity,
    },
    Fixture {
        id: "poisson.jacobi.so3",
        inputs: || biv_inputs("so3", 1),
        compute: || Ok(first_jacobiator(&so3())),
    },
    Fixture {
        id: "poisson.jacobi.nonjacobi4",
        inputs: || biv_inputs("nonjacobi4", 1),
        compute: || Ok(first_jacobiator(&nonjacobi4())),
    },
    Fixture {
        id: "poisson.lie.plane.x_dy",
        inputs: || biv_inputs("plane", 1),
        compute: || lie_fixture(vec![1, 0], vec![1]),
    },
    Fixture {
        id: "poisson.lie.plane.x_dxdy",
        inputs: || biv_inputs("plane", 1),
        compute: || lie_fixture(vec![1, 0], vec![0, 1]),
    },
    Fixture {
        id: "poisson.conjugation.nonjacobi4.d2",
        inputs: || biv_inputs("nonjacobi4", 2),
        compute: conjugation_nonjacobi,
    },
    Fixture { id: "poisson.star.v2.d6", inputs: || biv_inputs("symplectic:pairs=1", 6), compute: || star_fixture(1, 6) },
    Fixture { id: "poisson.star.v4.d4", inputs: || biv_inputs("symplectic:pairs=2", 4), compute: || star_fixture(2, 4) },
    Fixture {
        id: "poisson.homology.plane.d6",
        inputs: || biv_inputs("plane", 6),
        compute: || homology_fixture(plane(), 6),
    },
    Fixture {
        id: "poisson.homology.zero2.d6",
        inputs: || biv_inputs("zero:vars=2", 6),
        compute: || homology_fixture(Biv { vars: 2, comps: vec![] }, 6),
    },
    Fixture {
        id: "poisson.homology.zero0.d6",
        inputs: || biv_inputs("zero:vars=0", 6),
        compute: || homology_fixture(Biv { vars: 0, comps: vec![] }, 6),
    },
];
