//! The reduced Hochschild complex `A ⊗ Ā^{⊗n}` with Hochschild boundary `∂`
//! and Connes' operator `B`, split into (weight, parity) sectors.
//!
//! A chain word `(i0; i1, .., in)` lists basis indices; the tail indices are
//! never the unit (index 0). Super signs follow the Koszul rule and are
//! applied here rather than stored in the algebra.

mod homology;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{NcgError, Result};
use crate::exactlin::SparseMatrix;
use crate::scalar::Scalar;

pub use homology::{hh0_direct, hh_ranks, hkr_reference, Hh0, HhEntry, HhTable, GUARD_BAND};

pub type Word = Vec<usize>;

/// A chain as a finite linear combination of words.
pub type Chain<F> = BTreeMap<Word, F>;

/// Which part of the (unbounded) complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeWindow {
    pub n_max: usize,
    /// Inclusive weight range; requires a weighted algebra.
    pub weights: Option<(i64, i64)>,
}

impl DegreeWindow {
    pub fn new(n_max: usize) -> Self {
        DegreeWindow { n_max, weights: None }
    }

    pub fn with_weights(mut self, lo: i64, hi: i64) -> Self {
        self.weights = Some((lo, hi));
        self
    }
}

/// The pieces `∂` and `B` preserve: total weight and total parity of the
/// algebra elements in a word (each present only when the algebra carries it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Sector {
    pub weight: Option<i64>,
    pub parity: Option<u8>,
}

/// An ordered basis of one (n, sector) block.
#[derive(Clone, Debug, Default)]
pub struct Block {
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Block {
    fn from_words(mut words: Vec<Word>) -> Self {
        words.sort();
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Block { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

pub fn sector_of<F: Scalar>(alg: &Algebra<F>, w: &[usize]) -> Sector {
    Sector {
        weight: alg.weights().map(|wt| w.iter().map(|&i| wt[i]).sum()),
        parity: alg.is_super().then(|| (w.iter().map(|&i| alg.parity(i) as u32).sum::<u32>() % 2) as u8),
    }
}

fn check_weight_filter<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow) -> Result<()> {
    if window.weights.is_some() && alg.weights().is_none() {
        return Err(NcgError::Contract(format!(
            "weight filter requested but {} carries no weights",
            alg.name()
        )));
    }
    Ok(())
}

/// All words `(i0; i1..in)` with weight in `range`, in lexicographic order.
fn enumerate<F: Scalar>(alg: &Algebra<F>, n: usize, range: Option<(i64, i64)>) -> Vec<Word> {
    let d = alg.dim();
    let weights = alg.weights();
    let prune = range.is_some() && weights.is_some_and(|w| w.iter().all(|&x| x >= 0));
    let hi = range.map_or(i64::MAX, |r| r.1);
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n + 1);
    fn rec<F: Scalar>(
        alg: &Algebra<F>,
        n: usize,
        d: usize,
        acc: i64,
        prune: bool,
        hi: i64,
        range: Option<(i64, i64)>,
        word: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if word.len() == n + 1 {
            if range.map_or(true, |(lo, hi)| (lo..=hi).contains(&acc)) {
                out.push(word.clone());
            }
            return;
        }
        let start = if word.is_empty() { 0 } else { 1 };
        for i in start..d {
            let a = acc + alg.weight(i);
            if prune && a > hi {
                continue;
            }
            word.push(i);
            rec(alg, n, d, a, prune, hi, range, word, out);
            word.pop();
        }
    }
    if d > 1 || n == 0 {
        rec(alg, n, d, 0, prune, hi, range, &mut word, &mut out);
    }
    out
}

/// Basis of `A ⊗ Ā^{⊗n}` within the window's weight range, lexicographically ordered.
pub fn chain_basis<F: Scalar>(alg: &Algebra<F>, n: usize, window: &DegreeWindow) -> Result<Vec<Word>> {
    check_weight_filter(alg, window)?;
    Ok(enumerate(alg, n, window.weights))
}

fn koszul(alg_parity: impl Fn(usize) -> u8, a: usize, others: &[usize]) -> bool {
    let pa = alg_parity(a);
    pa == 1 && others.iter().map(|&i| alg_parity(i) as u32).sum::<u32>() % 2 == 1
}

fn sign<F: Scalar>(negative: bool) -> F {
    if negative {
        -F::one()
    } else {
        F::one()
    }
}

/// `∂` of a single word.
pub fn boundary_word<F: Scalar>(alg: &Algebra<F>, w: &[usize]) -> Vec<(Word, F)> {
    let n = w.len() - 1;
    let mut out = Vec::new();
    for j in 0..n {
        let s: F = sign(j % 2 == 1);
        for (k, c) in alg.basis_product(w[j], w[j + 1]).iter() {
            if j > 0 && *k == 0 {
                continue;
            }
            let mut t = Vec::with_capacity(n);
            t.extend_from_slice(&w[..j]);
            t.push(*k);
            t.extend_from_slice(&w[j + 2..]);
            out.push((t, s.clone() * c.clone()));
        }
    }
    if n > 0 {
        let neg = (n % 2 == 1) ^ koszul(|i| alg.parity(i), w[n], &w[..n]);
        let s: F = sign(neg);
        for (k, c) in alg.basis_product(w[n], w[0]).iter() {
            let mut t = Vec::with_capacity(n);
            t.push(*k);
            t.extend_from_slice(&w[1..n]);
            out.push((t, s.clone() * c.clone()));
        }
    }
    out
}

/// `B` of a single word: the signed cyclic rotations, each prefixed by the unit.
pub fn connes_word<F: Scalar>(alg: &Algebra<F>, w: &[usize]) -> Vec<(Word, F)> {
    if w[0] == 0 {
        return Vec::new();
    }
    let n = w.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    let mut cur: Vec<usize> = w.to_vec();
    let mut neg = false;
    for _ in 0..=n {
        let mut t = Vec::with_capacity(n + 2);
        t.push(0);
        t.extend_from_slice(&cur);
        out.push((t, sign::<F>(neg)));
        // t(a0..an) = ± (an, a0, .., a_{n-1})
        neg ^= (n % 2 == 1) ^ koszul(|i| alg.parity(i), cur[n], &cur[..n]);
        cur.rotate_right(1);
    }
    out
}

fn apply_chain<F: Scalar>(
    alg: &Algebra<F>,
    c: &Chain<F>,
    op: impl Fn(&Algebra<F>, &[usize]) -> Vec<(Word, F)>,
) -> Chain<F> {
    let mut out: Chain<F> = BTreeMap::new();
    for (w, x) in c {
        for (t, y) in op(alg, w) {
            let e = out.entry(t).or_insert_with(F::zero);
            *e += x.clone() * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn boundary_chain<F: Scalar>(alg: &Algebra<F>, c: &Chain<F>) -> Chain<F> {
    apply_chain(alg, c, |a, w| boundary_word(a, w))
}

pub fn connes_chain<F: Scalar>(alg: &Algebra<F>, c: &Chain<F>) -> Chain<F> {
    apply_chain(alg, c, |a, w| connes_word(a, w))
}

fn operator_matrix<F: Scalar>(
    alg: &Algebra<F>,
    domain: &[Word],
    codomain: &Block,
    op: impl Fn(&Algebra<F>, &[usize]) -> Vec<(Word, F)>,
) -> Result<SparseMatrix<F>> {
    let mut trip = Vec::new();
    for (col, w) in domain.iter().enumerate() {
        for (t, c) in op(alg, w) {
            let row = codomain.position(&t).ok_or_else(|| {
                NcgError::Structural(format!("image word {t:?} of {w:?} lies outside the target block"))
            })?;
            trip.push((row, col, c));
        }
    }
    SparseMatrix::from_triplets(codomain.len(), domain.len(), trip)
}

/// `∂: C_n → C_{n-1}` on the window's bases (rows index the target).
pub fn boundary<F: Scalar>(alg: &Algebra<F>, n: usize, window: &DegreeWindow) -> Result<SparseMatrix<F>> {
    let dom = chain_basis(alg, n, window)?;
    if n == 0 {
        return Ok(SparseMatrix::zeros(0, dom.len()));
    }
    let cod = Block::from_words(chain_basis(alg, n - 1, window)?);
    operator_matrix(alg, &dom, &cod, boundary_word)
}

/// `B: C_n → C_{n+1}` on the window's bases.
pub fn connes_b<F: Scalar>(alg: &Algebra<F>, n: usize, window: &DegreeWindow) -> Result<SparseMatrix<F>> {
    let dom = chain_basis(alg, n, window)?;
    let cod = Block::from_words(chain_basis(alg, n + 1, window)?);
    operator_matrix(alg, &dom, &cod, connes_word)
}

/// Blocks `C_0 .. C_top` of the reduced complex, split by sector.
pub struct HochschildComplex<'a, F> {
    alg: &'a Algebra<F>,
    blocks: Vec<BTreeMap<Sector, Block>>,
    empty: Block,
}

impl<'a, F: Scalar> HochschildComplex<'a, F> {
    pub fn new(alg: &'a Algebra<F>, top: usize, weights: Option<(i64, i64)>) -> Result<Self> {
        check_weight_filter(alg, &DegreeWindow { n_max: top, weights })?;
        let blocks = (0..=top)
            .map(|n| {
                let mut by: BTreeMap<Sector, Vec<Word>> = BTreeMap::new();
                for w in enumerate(alg, n, weights) {
                    by.entry(sector_of(alg, &w)).or_default().push(w);
                }
                by.into_iter().map(|(s, ws)| (s, Block::from_words(ws))).collect()
            })
            .collect();
        Ok(HochschildComplex { alg, blocks, empty: Block::default() })
    }

    pub fn algebra(&self) -> &'a Algebra<F> {
        self.alg
    }

    pub fn top(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn sectors(&self) -> BTreeSet<Sector> {
        self.blocks.iter().flat_map(|b| b.keys().copied()).collect()
    }

    pub fn block(&self, n: usize, s: Sector) -> &Block {
        self.blocks.get(n).and_then(|b| b.get(&s)).unwrap_or(&self.empty)
    }

    pub fn dim(&self, n: usize, s: Sector) -> usize {
        self.block(n, s).len()
    }

    /// `∂: C_n → C_{n-1}` within one sector.
    pub fn boundary(&self, n: usize, s: Sector) -> Result<SparseMatrix<F>> {
        let dom = self.block(n, s);
        if n == 0 {
            return Ok(SparseMatrix::zeros(0, dom.len()));
        }
        operator_matrix(self.alg, &dom.words, self.block(n - 1, s), boundary_word)
    }

    /// `B: C_n → C_{n+1}` within one sector; needs `n + 1 <= top`.
    pub fn connes(&self, n: usize, s: Sector) -> Result<SparseMatrix<F>> {
        if n + 1 > self.top() {
            return Err(NcgError::Window(format!("B on C_{n} needs block {} but top is {}", n + 1, self.top())));
        }
        operator_matrix(self.alg, &self.block(n, s).words, self.block(n + 1, s), connes_word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, parse_algebra_ref};
    use crate::scalar::{FieldDescriptor, F2, F3, Q};
    use crate::exactlin::rank;

    fn alg<F: Scalar>(r: &str) -> Algebra<F> {
        let spec = parse_algebra_ref(r).unwrap().resolve(Some(F::descriptor())).unwrap();
        Algebra::from_spec(&spec).unwrap()
    }

    fn identities<F: Scalar>(a: &Algebra<F>, top: usize) {
        let cx = HochschildComplex::new(a, top, None).unwrap();
        for s in cx.sectors() {
            for n in 0..top {
                let b = cx.boundary(n, s).unwrap();
                let bb = cx.connes(n, s).unwrap();
                if n >= 1 {
                    let d2 = cx.boundary(n - 1, s).unwrap().mul(&b).unwrap();
                    assert!(d2.is_zero(), "{} d^2 at n={n} {s:?}", a.name());
                }
                if n + 2 <= top {
                    let b2 = cx.connes(n + 1, s).unwrap().mul(&bb).unwrap();
                    assert!(b2.is_zero(), "{} B^2 at n={n}", a.name());
                }
                let db = cx.boundary(n + 1, s).unwrap().mul(&bb).unwrap();
                let bd = if n >= 1 {
                    cx.connes(n - 1, s).unwrap().mul(&b).unwrap()
                } else {
                    SparseMatrix::zeros(db.rows(), db.cols())
                };
                assert!(db.add(&bd).unwrap().is_zero(), "{} dB+Bd at n={n} {s:?}", a.name());
            }
        }
    }

    #[test]
    fn identities_on_small_algebras() {
        for r in ["dual_numbers", "clifford1", "mat:m=2", "a2_path", "group_z2", "quantum_plane:q=5,max_weight=2"] {
            identities(&alg::<Q>(r), 4);
        }
        identities(&alg::<F2>("clifford1"), 5);
        identities(&alg::<F3>("mat:m=2"), 4);
    }

    #[test]
    fn basis_examples() {
        let d = alg::<Q>("dual_numbers");
        assert_eq!(chain_basis(&d, 0, &DegreeWindow::new(0)).unwrap().len(), 2);
        assert_eq!(chain_basis(&d, 2, &DegreeWindow::new(2)).unwrap(), vec![vec![0, 1, 1], vec![1, 1, 1]]);
        let qp = alg::<Q>("quantum_plane:q=2,max_weight=3");
        let w = DegreeWindow::new(1).with_weights(2, 2);
        assert_eq!(chain_basis(&qp, 1, &w).unwrap().len(), 7);
        let a2 = alg::<Q>("a2_path");
        assert!(matches!(chain_basis(&a2, 1, &w), Err(NcgError::Contract(_))));
    }

    #[test]
    fn two_term_boundary_is_commutator() {
        let m2 = alg::<Q>("mat:m=2");
        let d = boundary(&m2, 1, &DegreeWindow::new(1)).unwrap();
        assert_eq!(rank(&d), 3);
        let p = builtin("point", &Default::default(), FieldDescriptor::Rationals).unwrap();
        let p = Algebra::<Q>::from_spec(&p).unwrap();
        for n in 0..4 {
            assert!(boundary(&p, n, &DegreeWindow::new(n)).unwrap().is_zero());
        }
    }

    #[test]
    fn connes_on_degree_zero() {
        let d = alg::<Q>("dual_numbers");
        let b = connes_b(&d, 0, &DegreeWindow::new(0)).unwrap();
        // B(1) = 0, B(e) = 1 ⊗ e; C_1 has basis (1; e), (e; e).
        let (z, o) = (Q::from_i64(0), Q::from_i64(1));
        assert_eq!(b.to_dense(), vec![vec![z.clone(), o], vec![z.clone(), z]]);
    }
}
