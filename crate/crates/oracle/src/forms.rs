//! Polynomial forms over Q as maps `(exponents, sorted index list) -> coefficient`.
//! Signs come from counting inversions of the index list.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dense;
use crate::field::Kf;

pub type Key = (Vec<u32>, Vec<usize>);
pub type Form = BTreeMap<Key, BigRational>;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Sorts an index list; `None` on a repeated index.
fn normalize(list: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inv = 0;
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if list[i] == list[j] {
                return None;
            }
            if list[i] > list[j] {
                inv += 1;
            }
        }
    }
    let mut s = list.to_vec();
    s.sort_unstable();
    Some((s, inv % 2 == 1))
}

pub fn add_into(f: &mut Form, key: Key, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = f.entry(key.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        f.remove(&key);
    }
}

pub fn sum(a: &Form, b: &Form, s: i64) -> Form {
    let mut out = a.clone();
    for (k, c) in b {
        add_into(&mut out, k.clone(), c * q(s));
    }
    out
}

pub fn scale(a: &Form, s: &BigRational) -> Form {
    let mut out = Form::new();
    for (k, c) in a {
        add_into(&mut out, k.clone(), c * s);
    }
    out
}

pub fn mono(e: Vec<u32>, idx: Vec<usize>) -> Form {
    let mut f = Form::new();
    let (s, neg) = normalize(&idx).expect("distinct indices");
    f.insert((e, s), if neg { -BigRational::one() } else { BigRational::one() });
    f
}

pub fn wedge(a: &Form, b: &Form) -> Form {
    let mut out = Form::new();
    for ((e1, s1), c1) in a {
        for ((e2, s2), c2) in b {
            let list: Vec<usize> = s1.iter().chain(s2).copied().collect();
            if let Some((s, neg)) = normalize(&list) {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                let c = c1 * c2;
                add_into(&mut out, (e, s), if neg { -c } else { c });
            }
        }
    }
    out
}

pub fn partial(a: &Form, i: usize) -> Form {
    let mut out = Form::new();
    for ((e, s), c) in a {
        if e[i] > 0 {
            let mut e2 = e.clone();
            e2[i] -= 1;
            add_into(&mut out, (e2, s.clone()), c * q(e[i] as i64));
        }
    }
    out
}

/// `d(f dx_S) = Σ_j ∂_j f dx_j ∧ dx_S`.
pub fn d(a: &Form) -> Form {
    let vars = a.keys().next().map_or(0, |(e, _)| e.len());
    let mut out = Form::new();
    for j in 0..vars {
        let mut dxj = Form::new();
        dxj.insert((vec![0; vars], vec![j]), BigRational::one());
        out = sum(&out, &wedge(&dxj, &partial(a, j)), 1);
    }
    out
}

/// Interior product with `∂_k`: `Σ (-1)^pos` over the position of `k`.
pub fn interior(a: &Form, k: usize) -> Form {
    let mut out = Form::new();
    for ((e, s), c) in a {
        if let Some(pos) = s.iter().position(|&x| x == k) {
            let mut s2 = s.clone();
            s2.remove(pos);
            add_into(&mut out, (e.clone(), s2), if pos % 2 == 1 { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// A bivector as a list of `(i, j, coefficient function)`.
pub struct Biv {
    pub vars: usize,
    pub comps: Vec<(usize, usize, Form)>,
}

impl Biv {
    /// `ι(dx_i ∧ dx_j) = 1` for the component `∂_i ∧ ∂_j`: contract `∂_i` first, then `∂_j`.
    pub fn iota(&self, a: &Form) -> Form {
        let mut out = Form::new();
        for (i, j, f) in &self.comps {
            out = sum(&out, &wedge(f, &interior(&interior(a, *i), *j)), 1);
        }
        out
    }

    pub fn lie(&self, a: &Form) -> Form {
        sum(&self.iota(&d(a)), &d(&self.iota(a)), -1)
    }

    pub fn bracket(&self, f: &Form, g: &Form) -> Form {
        let mut out = Form::new();
        for (i, j, a) in &self.comps {
            let t = sum(&wedge(&partial(f, *i), &partial(g, *j)), &wedge(&partial(f, *j), &partial(g, *i)), -1);
            out = sum(&out, &wedge(a, &t), 1);
        }
        out
    }

    pub fn coord(&self, i: usize) -> Form {
        let mut e = vec![0; self.vars];
        e[i] = 1;
        mono(e, vec![])
    }

    /// Jacobiator of the three coordinate functions.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Form {
        let (f, g, h) = (self.coord(i), self.coord(j), self.coord(k));
        let t1 = self.bracket(&f, &self.bracket(&g, &h));
        let t2 = self.bracket(&g, &self.bracket(&h, &f));
        let t3 = self.bracket(&h, &self.bracket(&f, &g));
        sum(&sum(&t1, &t2, 1), &t3, 1)
    }

    /// `Σ_k (s ι)^k / k!`.
    pub fn exp_iota(&self, a: &Form, s: i64) -> Form {
        series(a, |x| scale(&self.iota(x), &q(s)))
    }
}

/// `Σ_k T^k a / k!` for a nilpotent `T`.
pub fn series(a: &Form, t: impl Fn(&Form) -> Form) -> Form {
    let mut out = a.clone();
    let mut term = a.clone();
    let mut k = 1;
    loop {
        term = scale(&t(&term), &BigRational::new(1.into(), k.into()));
        if term.is_empty() {
            return out;
        }
        out = sum(&out, &term, 1);
        k += 1;
    }
}

/// All monomial forms `x^e dx_S` with `|e| <= deg`.
pub fn monomials(vars: usize, deg: u32) -> Vec<Form> {
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..vars {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=deg - used).map(move |x| {
                    let mut e2 = e.clone();
                    e2.push(x);
                    e2
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for e in exps {
        for mask in 0..(1usize << vars) {
            let idx: Vec<usize> = (0..vars).filter(|i| mask & (1 << i) != 0).collect();
            out.push(mono(e.clone(), idx));
        }
    }
    out
}

pub fn show(a: &Form) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = a
        .iter()
        .map(|((e, s), c)| {
            let mut t = crate::field::show(Kf::Q, c);
            for (i, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => t.push_str(&format!("*x{i}")),
                    _ => t.push_str(&format!("*x{i}^{p}")),
                }
            }
            for i in s {
                t.push_str(&format!("*dx{i}"));
            }
            t
        })
        .collect();
    parts.join(" + ")
}

/// Stable ranks `(even, odd)` of `d + 𝓛` on forms of coefficient degree
/// `<= deg`: the image of homology from degree `<= deg - guard`.
pub fn folded_ranks(b: &Biv, deg: u32, guard: u32) -> (usize, usize) {
    let k = Kf::Q;
    let basis: Vec<Key> = monomials(b.vars, deg).into_iter().map(|f| f.into_keys().next().unwrap()).collect();
    let par = |key: &Key| key.1.len() % 2;
    let split: Vec<Vec<&Key>> = (0..2).map(|p| basis.iter().filter(|x| par(x) == p).collect()).collect();
    // column images of the differential, parity p -> 1 - p
    let image = |key: &Key| -> Form {
        let mut f = Form::new();
        f.insert(key.clone(), BigRational::one());
        sum(&d(&f), &b.lie(&f), 1)
    };
    let coords = |f: &Form, p: usize| -> Vec<BigRational> {
        split[p].iter().map(|key| f.get(*key).cloned().unwrap_or_else(BigRational::zero)).collect()
    };
    let mut out = [0usize; 2];
    for p in 0..2 {
        let bnd: Vec<Vec<BigRational>> = split[1 - p].iter().map(|key| coords(&image(key), p)).collect();
        let base = dense::rank(k, bnd.clone());
        let small: Vec<&Key> = split[p].iter().copied().filter(|key| key.0.iter().sum::<u32>() + guard <= deg).collect();
        // rows = target coordinates, columns = small basis
        let mut m = dense::zeros(split[1 - p].len(), small.len());
        for (c, key) in small.iter().enumerate() {
            for (r, x) in coords(&image(key), 1 - p).into_iter().enumerate() {
                m[r][c] = x;
            }
        }
        let mut rows = bnd;
        for z in dense::kernel(k, m, small.len()) {
            let mut f = Form::new();
            for (c, x) in z.into_iter().enumerate() {
                add_into(&mut f, small[c].clone(), x);
            }
            rows.push(coords(&f, p));
        }
        out[p] = dense::rank(k, rows) - base;
    }
    (out[0], out[1])
}
