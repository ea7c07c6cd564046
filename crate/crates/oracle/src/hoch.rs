//! Hochschild chains as explicit tensor words, unreduced or reduced.

use std::collections::BTreeMap;

use ncg_core::algebra::AlgebraSpec;
use num_traits::Zero;

use crate::dense::{self, Dense};
use crate::field::{El, Kf};

pub struct Alg {
    pub k: Kf,
    pub dim: usize,
    pub unit: usize,
    pub weight: Vec<i64>,
    table: Vec<Vec<Vec<(usize, El)>>>,
}

pub type Word = Vec<usize>;
pub type Chain = BTreeMap<Word, El>;

impl Alg {
    /// Only ungraded-parity (purely even) algebras are handled.
    pub fn new(spec: &AlgebraSpec, k: Kf) -> Result<Alg, String> {
        if spec.parity.as_ref().is_some_and(|p| p.iter().any(|&x| x % 2 == 1)) {
            return Err(format!("{} has odd elements; the oracle handles even algebras only", spec.name));
        }
        let mut table = vec![vec![Vec::new(); spec.dim]; spec.dim];
        for (i, j, l, c) in &spec.structure {
            let c = k.norm(c.clone());
            if !c.is_zero() {
                table[*i][*j].push((*l, c));
            }
        }
        Ok(Alg {
            k,
            dim: spec.dim,
            unit: spec.unit_index,
            weight: spec.weight.clone().unwrap_or_else(|| vec![0; spec.dim]),
            table,
        })
    }

    pub fn mul(&self, i: usize, j: usize) -> &[(usize, El)] {
        &self.table[i][j]
    }

    pub fn word_weight(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.weight[i]).sum()
    }

    /// All words `a0 ⊗ .. ⊗ an`; reduced words have no unit in the tail.
    pub fn words(&self, n: usize, reduced: bool, weight: Option<i64>) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.dim).map(|i| vec![i]).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &out {
                for i in 0..self.dim {
                    if reduced && i == self.unit {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            out = next;
        }
        if let Some(wt) = weight {
            out.retain(|w| self.word_weight(w) == wt);
        }
        out
    }

    fn push(&self, c: &mut Chain, w: Word, x: El, reduced: bool) {
        if reduced && w[1..].contains(&self.unit) {
            return;
        }
        let e = c.entry(w.clone()).or_insert_with(El::zero);
        *e = self.k.add(e, &x);
        if e.is_zero() {
            c.remove(&w);
        }
    }

    /// `b(a0⊗..⊗an) = Σ (-1)^i ..⊗ a_i a_{i+1} ⊗.. + (-1)^n a_n a_0 ⊗ a_1 ⊗ .. ⊗ a_{n-1}`.
    pub fn b(&self, w: &[usize], reduced: bool) -> Chain {
        let k = self.k;
        let n = w.len() - 1;
        let mut out = Chain::new();
        if n == 0 {
            return out;
        }
        for i in 0..n {
            let sign = if i % 2 == 0 { k.one() } else { k.int(-1) };
            for (l, c) in self.mul(w[i], w[i + 1]) {
                let mut v: Word = w[..i].to_vec();
                v.push(*l);
                v.extend_from_slice(&w[i + 2..]);
                self.push(&mut out, v, k.mul(&sign, c), reduced);
            }
        }
        let sign = if n % 2 == 0 { k.one() } else { k.int(-1) };
        for (l, c) in self.mul(w[n], w[0]) {
            let mut v: Word = vec![*l];
            v.extend_from_slice(&w[1..n]);
            self.push(&mut out, v, k.mul(&sign, c), reduced);
        }
        out
    }

    /// Connes' operator on reduced words:
    /// `B(a0⊗..⊗an) = Σ_i (-1)^{ni} 1 ⊗ a_i ⊗ .. ⊗ a_n ⊗ a_0 ⊗ .. ⊗ a_{i-1}`.
    pub fn connes(&self, w: &[usize]) -> Chain {
        let k = self.k;
        let n = w.len() - 1;
        let mut out = Chain::new();
        if w[0] == self.unit {
            return out;
        }
        for i in 0..=n {
            let sign = if (n * i) % 2 == 0 { k.one() } else { k.int(-1) };
            let mut v = vec![self.unit];
            v.extend_from_slice(&w[i..]);
            v.extend_from_slice(&w[..i]);
            self.push(&mut out, v, sign, true);
        }
        out
    }

    /// Matrix with rows indexed by `tgt`, columns by `src`.
    pub fn matrix(&self, src: &[Word], tgt: &[Word], f: impl Fn(&[usize]) -> Chain) -> Dense {
        let pos: BTreeMap<&Word, usize> = tgt.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = dense::zeros(tgt.len(), src.len());
        for (c, w) in src.iter().enumerate() {
            for (v, x) in f(w) {
                let r = *pos.get(&v).expect("target word in basis");
                m[r][c] = x;
            }
        }
        m
    }

    /// `dim HH_n` for `n = 0..=n_max`.
    pub fn hh_ranks(&self, n_max: usize, reduced: bool) -> Vec<usize> {
        let words: Vec<Vec<Word>> = (0..=n_max + 1).map(|n| self.words(n, reduced, None)).collect();
        let ranks: Vec<usize> = (1..=n_max + 1)
            .map(|n| dense::rank(self.k, self.matrix(&words[n], &words[n - 1], |w| self.b(w, reduced))))
            .collect();
        (0..=n_max)
            .map(|n| {
                let out = if n == 0 { 0 } else { ranks[n - 1] };
                words[n].len() - out - ranks[n]
            })
            .collect()
    }

    /// Rank of the span of all commutators `e_i e_j - e_j e_i`.
    pub fn commutator_rank(&self) -> usize {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut r = vec![El::zero(); self.dim];
                for (l, c) in self.mul(i, j) {
                    r[*l] = self.k.add(&r[*l], c);
                }
                for (l, c) in self.mul(j, i) {
                    r[*l] = self.k.sub(&r[*l], c);
                }
                rows.push(r);
            }
        }
        dense::rank(self.k, rows)
    }

    pub fn element_mul(&self, x: &[El], y: &[El]) -> Vec<El> {
        let mut out = vec![El::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (l, c) in self.mul(i, j) {
                    out[*l] = self.k.add(&out[*l], &self.k.mul(c, &self.k.mul(a, b)));
                }
            }
        }
        out
    }
}
