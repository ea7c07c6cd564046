//! Negative cyclic homology of one weight of a positively graded algebra, as
//! a graded `k[u]/u^N`-module, with its `u`-strings read off from ranks of
//! powers of `u` on homology.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dense::{self, Dense};
use crate::field::El;
use crate::hoch::{Alg, Word};

/// `(start degree, length)` of each `u`-string; degree `m = 2k - n`.
pub type Strings = Vec<(i64, usize)>;

struct Graded {
    basis: BTreeMap<i64, Vec<(usize, Word)>>,
}

impl Graded {
    fn dim(&self, m: i64) -> usize {
        self.basis.get(&m).map_or(0, |b| b.len())
    }

    fn index(&self, m: i64, key: &(usize, Word)) -> usize {
        self.basis[&m].iter().position(|x| x == key).expect("basis element")
    }
}

/// `None` when the weight has chains in every degree up to `n_cap` (not finite).
pub fn strings(alg: &Alg, weight: i64, n_cap: usize, nn: usize, with_b: bool) -> Option<Strings> {
    let k = alg.k;
    if !alg.words(n_cap + 1, true, Some(weight)).is_empty() {
        return None;
    }
    let mut g = Graded { basis: BTreeMap::new() };
    for n in 0..=n_cap {
        for w in alg.words(n, true, Some(weight)) {
            for kk in 0..nn {
                g.basis.entry(2 * kk as i64 - n as i64).or_default().push((kk, w.clone()));
            }
        }
    }
    let (lo, hi) = match (g.basis.keys().next(), g.basis.keys().last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Some(Vec::new()),
    };
    // d[m]: V_m -> V_{m+1}, rows = target
    let mut d: BTreeMap<i64, Dense> = BTreeMap::new();
    for m in lo - 1..=hi {
        let mut mat = dense::zeros(g.dim(m + 1), g.dim(m));
        if let Some(src) = g.basis.get(&m) {
            for (c, (kk, w)) in src.iter().enumerate() {
                for (v, x) in alg.b(w, true) {
                    let r = g.index(m + 1, &(*kk, v));
                    mat[r][c] = k.add(&mat[r][c], &x);
                }
                if with_b && kk + 1 < nn {
                    for (v, x) in alg.connes(w) {
                        let r = g.index(m + 1, &(kk + 1, v));
                        mat[r][c] = k.add(&mat[r][c], &x);
                    }
                }
            }
        }
        d.insert(m, mat);
    }
    let cycles = |m: i64| -> Vec<Vec<El>> {
        if g.dim(m) == 0 {
            return Vec::new();
        }
        dense::kernel(k, d[&m].clone(), g.dim(m))
    };
    let boundaries = |m: i64| -> Vec<Vec<El>> {
        let mat = match d.get(&(m - 1)) {
            Some(x) => x,
            None => return Vec::new(),
        };
        (0..g.dim(m - 1)).map(|c| mat.iter().map(|row| row[c].clone()).collect()).collect()
    };
    let shift = |m: i64, j: usize, z: &[El]| -> Vec<El> {
        let mut out = vec![El::zero(); g.dim(m + 2 * j as i64)];
        for (i, x) in z.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let (kk, w) = &g.basis[&m][i];
            if kk + j < nn {
                out[g.index(m + 2 * j as i64, &(kk + j, w.clone()))] = x.clone();
            }
        }
        out
    };
    // r(m, j) = rank of u^j : H_m -> H_{m+2j}
    let r = |m: i64, j: usize| -> usize {
        let t = m + 2 * j as i64;
        if g.dim(m) == 0 || g.dim(t) == 0 {
            return 0;
        }
        let b = boundaries(t);
        let base = dense::rank(k, b.clone());
        let mut rows = b;
        rows.extend(cycles(m).iter().map(|z| shift(m, j, z)));
        dense::rank(k, rows) - base
    };
    let mut out = Vec::new();
    for m in lo..=hi {
        let starts = |len: usize| -> usize {
            if len > nn {
                return 0;
            }
            r(m, len - 1) - r(m - 2, len)
        };
        for len in 1..=nn {
            let exact = starts(len) - starts(len + 1);
            out.extend(std::iter::repeat_n((m, len), exact));
        }
    }
    Some(out)
}
