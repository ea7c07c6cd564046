//! Negative cyclic homology over `k[u]/u^N`, the periodic estimate, the
//! Hodge filtration and degeneration checks.
//!
//! The complex `(C[u]/u^N, ∂ + uB)` is graded by `m = 2k - n` for a chain of
//! tensor length `n` times `u^k`, so the differential has degree `+1` and
//! `u` degree `+2`. Its homology splits into `u`-strings; strings of full
//! length `N` are the free summands that survive inverting `u`.
//!
//! Sectors of a positively weighted algebra with weight at most `n_max` are
//! finite complexes and are computed exactly. Every other sector is cut to
//! degrees `m >= 2(N-1) - n_max`, which is a subcomplex; strings starting in
//! the lowest two degrees of the cut are unstable and left out of verdicts.

mod charp;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{NcgError, Result};
use crate::exactlin::{GradedUComplex, SparseMatrix, UModuleReport, UString, UTruncation};
use crate::hochschild::{DegreeWindow, HochschildComplex, Sector};
use crate::scalar::{FieldDescriptor, Scalar};

pub use charp::{
    char_p_compare, graded_piece_analysis, two_term_piece, CharPComparison, CharPSlot, GradedPieces,
};

/// One `u`-string of a sector, with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedString {
    pub weight: Option<i64>,
    pub start: i64,
    pub length: usize,
    pub multiplicity: usize,
    /// Total parity: degree plus parity of the algebra elements.
    pub parity: u8,
    pub stable: bool,
    pub free: bool,
}

impl ClassifiedString {
    /// Start degree shifted by the odd algebra content, used for filtration indices.
    pub fn effective_start(&self, sector_parity: u8) -> i64 {
        self.start - sector_parity as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorReport {
    pub sector: Sector,
    /// Finite sector computed without cutting.
    pub exact: bool,
    /// Lowest degree kept.
    pub m_min: i64,
    pub strings: Vec<ClassifiedString>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub weight: Option<i64>,
    pub even: UModuleReport,
    pub odd: UModuleReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeCyclic {
    pub algebra: String,
    pub field: FieldDescriptor,
    pub window: DegreeWindow,
    pub truncation: usize,
    /// Stable part, by total parity.
    pub even: UModuleReport,
    pub odd: UModuleReport,
    pub per_weight: Vec<WeightProfile>,
    pub sectors: Vec<SectorReport>,
    /// Strings left out because they touch the cut.
    pub unstable_strings: usize,
}

impl NegativeCyclic {
    pub fn stable_strings(&self) -> impl Iterator<Item = (&SectorReport, &ClassifiedString)> {
        self.sectors.iter().flat_map(|s| s.strings.iter().filter(|x| x.stable).map(move |x| (s, x)))
    }

    pub fn free_ranks(&self) -> (usize, usize) {
        (self.even.free_rank, self.odd.free_rank)
    }
}

fn check_window(window: &DegreeWindow, n: usize) -> Result<()> {
    if n == 0 {
        return Err(NcgError::InvalidParameter("u-truncation N must be >= 1".into()));
    }
    if window.n_max < 2 * n {
        return Err(NcgError::Window(format!(
            "n_max = {} but truncation N = {n} needs n_max >= {}",
            window.n_max,
            2 * n
        )));
    }
    Ok(())
}

fn place<F: Scalar>(trip: &mut Vec<(usize, usize, F)>, m: &SparseMatrix<F>, row0: usize, col0: usize) {
    for (r, row) in m.row_vectors().iter().enumerate() {
        for (c, v) in row.iter() {
            trip.push((row0 + r, col0 + c, v.clone()));
        }
    }
}

/// The graded `k[u]/u^N` complex of one sector over degrees `[lo, 2(N-1)]`.
fn sector_complex<F: Scalar>(
    cx: &HochschildComplex<'_, F>,
    s: Sector,
    n: usize,
    lo: i64,
    with_b: bool,
) -> Result<GradedUComplex<F>> {
    let top = cx.top();
    let hi = 2 * (n as i64 - 1);
    let len = (hi - lo + 1) as usize;
    // components of V_m: (k, tensor length, offset)
    let comps: Vec<Vec<(usize, usize, usize)>> = (0..len)
        .map(|i| {
            let m = lo + i as i64;
            let mut off = 0;
            let mut out = Vec::new();
            for k in 0..n {
                let t = 2 * k as i64 - m;
                if t < 0 || t as usize > top {
                    continue;
                }
                let d = cx.dim(t as usize, s);
                if d > 0 {
                    out.push((k, t as usize, off));
                    off += d;
                }
            }
            out
        })
        .collect();
    let dims: Vec<usize> = comps
        .iter()
        .map(|c| c.last().map_or(0, |&(_, t, off)| off + cx.dim(t, s)))
        .collect();
    let boundary: Vec<SparseMatrix<F>> = (0..=top).map(|t| cx.boundary(t, s)).collect::<Result<_>>()?;
    let connes: Vec<SparseMatrix<F>> = (0..top).map(|t| cx.connes(t, s)).collect::<Result<_>>()?;
    let find = |i: usize, k: usize, t: usize| -> Option<usize> {
        comps.get(i)?.iter().find(|c| c.0 == k && c.1 == t).map(|c| c.2)
    };
    let mut d = Vec::with_capacity(len);
    let mut u = Vec::with_capacity(len);
    for i in 0..len {
        let mut dt = Vec::new();
        let mut ut = Vec::new();
        for &(k, t, off) in &comps[i] {
            if t > 0 {
                if let Some(o) = find(i + 1, k, t - 1) {
                    place(&mut dt, &boundary[t], o, off);
                }
            }
            if with_b && k + 1 < n && t < top {
                if let Some(o) = find(i + 1, k + 1, t + 1) {
                    place(&mut dt, &connes[t], o, off);
                }
            }
            if k + 1 < n {
                if let Some(o) = find(i + 2, k + 1, t) {
                    for r in 0..cx.dim(t, s) {
                        ut.push((o + r, off + r, F::one()));
                    }
                }
            }
        }
        let next = dims.get(i + 1).copied().unwrap_or(0);
        let next2 = dims.get(i + 2).copied().unwrap_or(0);
        d.push(SparseMatrix::from_triplets(next, dims[i], dt)?);
        u.push(SparseMatrix::from_triplets(next2, dims[i], ut)?);
    }
    Ok(GradedUComplex { lo, dims, d, u, truncation: UTruncation::new(n)? })
}

fn fold(strings: &[&ClassifiedString], parity: u8, n: usize) -> UModuleReport {
    let mut free = 0;
    let mut torsion = Vec::new();
    for s in strings.iter().filter(|s| s.parity == parity) {
        if s.free {
            free += s.multiplicity;
        } else {
            torsion.extend(std::iter::repeat_n(s.length, s.multiplicity));
        }
    }
    UModuleReport::new(free, torsion, n)
}

/// Shared driver: `∂ + uB`, or `∂` alone when `with_b` is false.
pub(crate) fn folded_homology<F: Scalar>(
    alg: &Algebra<F>,
    window: &DegreeWindow,
    n: usize,
    with_b: bool,
) -> Result<NegativeCyclic> {
    check_window(window, n)?;
    let cx = HochschildComplex::new(alg, window.n_max, window.weights)?;
    let positive = alg.is_positively_graded();
    let m_min = 2 * (n as i64 - 1) - window.n_max as i64;
    let mut sectors = Vec::new();
    for s in cx.sectors() {
        let exact = positive && s.weight.is_some_and(|w| w <= window.n_max as i64);
        if positive && !exact {
            continue;
        }
        let lo = if exact { -(window.n_max as i64) } else { m_min };
        let g = sector_complex(&cx, s, n, lo, with_b)?;
        let eps = s.parity.unwrap_or(0);
        let strings = g
            .strings()?
            .into_iter()
            .map(|UString { start, length, multiplicity }| ClassifiedString {
                weight: s.weight,
                start,
                length,
                multiplicity,
                parity: ((start + eps as i64).rem_euclid(2)) as u8,
                stable: exact || start >= m_min + 2,
                free: length == n,
            })
            .collect();
        sectors.push(SectorReport { sector: s, exact, m_min: if exact { lo } else { m_min }, strings });
    }
    let stable: Vec<&ClassifiedString> = sectors.iter().flat_map(|s| s.strings.iter()).filter(|s| s.stable).collect();
    let unstable_strings = sectors
        .iter()
        .flat_map(|s| s.strings.iter())
        .filter(|s| !s.stable)
        .map(|s| s.multiplicity)
        .sum();
    let mut weights: Vec<Option<i64>> = sectors.iter().map(|s| s.sector.weight).collect();
    weights.dedup();
    let per_weight = weights
        .into_iter()
        .map(|w| {
            let these: Vec<&ClassifiedString> = stable.iter().copied().filter(|s| s.weight == w).collect();
            WeightProfile { weight: w, even: fold(&these, 0, n), odd: fold(&these, 1, n) }
        })
        .collect();
    Ok(NegativeCyclic {
        algebra: alg.name().to_string(),
        field: F::descriptor(),
        window: *window,
        truncation: n,
        even: fold(&stable, 0, n),
        odd: fold(&stable, 1, n),
        per_weight,
        sectors,
        unstable_strings,
    })
}

/// Homology of `(C^red[u]/u^N, ∂ + uB)` as a `k[u]/u^N`-module, by parity and weight.
pub fn negative_cyclic<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow, n: usize) -> Result<NegativeCyclic> {
    folded_homology(alg, window, n, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpEstimate {
    pub even: usize,
    pub odd: usize,
    pub conclusive: bool,
    pub at_n: (usize, usize),
    pub at_n_minus_1: (usize, usize),
    pub saturated: bool,
    pub diagnostics: Vec<String>,
}

fn estimate(at: &NegativeCyclic, below: &NegativeCyclic) -> HpEstimate {
    let at_n = at.free_ranks();
    let at_n_minus_1 = below.free_ranks();
    let saturated = at.even.saturated_at_n && at.odd.saturated_at_n;
    let mut diagnostics = Vec::new();
    if at_n != at_n_minus_1 {
        diagnostics.push(format!(
            "free ranks {at_n:?} at N = {} differ from {at_n_minus_1:?} at N = {}",
            at.truncation, below.truncation
        ));
    }
    if !saturated {
        diagnostics.push(format!("torsion reaches length {} at N = {}", at.truncation - 1, at.truncation));
    }
    if at.unstable_strings > 0 {
        diagnostics.push(format!("{} string(s) touching the window cut were left out", at.unstable_strings));
    }
    HpEstimate {
        even: at_n.0,
        odd: at_n.1,
        conclusive: at_n == at_n_minus_1 && saturated,
        at_n,
        at_n_minus_1,
        saturated,
        diagnostics,
    }
}

/// Periodic cyclic ranks, accepted when truncations `N` and `N - 1` agree
/// and the torsion is saturated.
pub fn hp_ranks<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow, n: usize) -> Result<HpEstimate> {
    if n < 2 {
        return Err(NcgError::InvalidParameter("the periodic estimate compares N and N - 1, so N >= 2".into()));
    }
    let at = negative_cyclic(alg, window, n)?;
    let below = negative_cyclic(alg, window, n - 1)?;
    Ok(estimate(&at, &below))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CollapsesInWindow,
    FiniteTorsionFound,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::CollapsesInWindow => "collapses-in-window",
            Verdict::FiniteTorsionFound => "finite-torsion-found",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degeneration {
    pub verdict: Verdict,
    /// Stable torsion strings.
    pub torsion: Vec<ClassifiedString>,
}

fn degeneration_of(at: &NegativeCyclic, hp: &HpEstimate) -> Degeneration {
    let torsion: Vec<ClassifiedString> = at.stable_strings().filter(|(_, s)| !s.free).map(|(_, s)| s.clone()).collect();
    let verdict = if !torsion.is_empty() {
        Verdict::FiniteTorsionFound
    } else if hp.at_n == hp.at_n_minus_1 {
        Verdict::CollapsesInWindow
    } else {
        Verdict::Inconclusive
    };
    Degeneration { verdict, torsion }
}

/// Whether `u`-torsion (a finite Jordan block) shows up in the stable window.
pub fn degeneration_check<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow, n: usize) -> Result<Degeneration> {
    let n_eff = n.max(2);
    let at = negative_cyclic(alg, window, n_eff)?;
    let below = negative_cyclic(alg, window, n_eff - 1)?;
    Ok(degeneration_of(&at, &estimate(&at, &below)))
}

/// A filtration index `i` stored as `2i`, so half-integers are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FiltrationStep {
    pub twice_index: i64,
    pub rank: usize,
}

impl FiltrationStep {
    pub fn label(&self) -> String {
        if self.twice_index % 2 == 0 {
            format!("{}", self.twice_index / 2)
        } else {
            format!("{}/2", self.twice_index)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeReport {
    pub algebra: String,
    pub field: FieldDescriptor,
    pub window: DegreeWindow,
    pub truncation: usize,
    pub hp_even: usize,
    pub hp_odd: usize,
    /// `F^i` as the rank of `u^i` on the free part: integer `i` on the even
    /// part, `i + 1/2` on the odd part.
    pub filtration: Vec<FiltrationStep>,
    /// `F^i` as the classes with a representative whose lowest tensor length
    /// is at least `2i`: a free string generated in degree `m` (shifted by its
    /// odd content) lies in `F^i` iff `m <= -2i`.
    pub degree_filtration: Vec<FiltrationStep>,
    pub u_profile_even: UModuleReport,
    pub u_profile_odd: UModuleReport,
    pub degeneration: Degeneration,
    pub diagnostics: Vec<String>,
}

impl HodgeReport {
    /// Ranks of one parity in increasing index: even = integer indices.
    pub fn ranks(steps: &[FiltrationStep], odd: bool) -> Vec<usize> {
        steps.iter().filter(|s| (s.twice_index % 2 != 0) == odd).map(|s| s.rank).collect()
    }
}

pub fn hodge_filtration<F: Scalar>(alg: &Algebra<F>, window: &DegreeWindow, n: usize) -> Result<HodgeReport> {
    if n < 2 {
        return Err(NcgError::InvalidParameter("N >= 2 is needed for a conclusive periodic estimate".into()));
    }
    let at = negative_cyclic(alg, window, n)?;
    let below = negative_cyclic(alg, window, n - 1)?;
    let hp = estimate(&at, &below);
    if !hp.conclusive {
        return Err(NcgError::Contract(format!(
            "periodic estimate for {} is inconclusive: {}",
            alg.name(),
            hp.diagnostics.join("; ")
        )));
    }
    let reach = window.n_max as i64;
    let mut filtration = Vec::new();
    let mut degree_filtration = Vec::new();
    let mut by_index: BTreeMap<i64, usize> = BTreeMap::new();
    for (sr, s) in at.stable_strings().filter(|(_, s)| s.free) {
        let m_eff = s.effective_start(sr.sector.parity.unwrap_or(0));
        for twice in 0..=reach {
            if (twice % 2 != 0) == (s.parity == 1) && m_eff <= -twice {
                *by_index.entry(twice).or_default() += s.multiplicity;
            }
        }
    }
    for twice in 0..=reach {
        let free = if twice % 2 == 0 { hp.even } else { hp.odd };
        let depth = twice / 2;
        filtration.push(FiltrationStep { twice_index: twice, rank: if depth < n as i64 { free } else { 0 } });
        degree_filtration.push(FiltrationStep { twice_index: twice, rank: by_index.get(&twice).copied().unwrap_or(0) });
    }
    Ok(HodgeReport {
        algebra: alg.name().to_string(),
        field: F::descriptor(),
        window: *window,
        truncation: n,
        hp_even: hp.even,
        hp_odd: hp.odd,
        filtration,
        degree_filtration,
        u_profile_even: at.even.clone(),
        u_profile_odd: at.odd.clone(),
        degeneration: degeneration_of(&at, &hp),
        diagnostics: hp.diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra_ref;
    use crate::hochschild::hh_ranks;
    use crate::scalar::Q;

    fn alg(r: &str) -> Algebra<Q> {
        Algebra::from_spec(&parse_algebra_ref(r).unwrap().resolve(None).unwrap()).unwrap()
    }

    #[test]
    fn point() {
        let p = alg("point");
        let nc = negative_cyclic(&p, &DegreeWindow::new(6), 3).unwrap();
        assert_eq!(nc.free_ranks(), (1, 0));
        assert!(!nc.even.has_torsion());
        let h = hodge_filtration(&p, &DegreeWindow::new(6), 3).unwrap();
        assert_eq!(HodgeReport::ranks(&h.filtration, false)[..3], [1, 1, 1]);
        assert_eq!(HodgeReport::ranks(&h.degree_filtration, false)[..2], [1, 0]);
        assert_eq!(h.degeneration.verdict, Verdict::CollapsesInWindow);
    }

    #[test]
    fn fat_points_and_super_point() {
        let w = DegreeWindow::new(8);
        for r in ["dual_numbers", "truncated_poly:m=3"] {
            let hp = hp_ranks(&alg(r), &w, 3).unwrap();
            assert_eq!((hp.even, hp.odd, hp.conclusive), (1, 0, true), "{r}: {hp:?}");
        }
        let hp = hp_ranks(&alg("clifford1"), &w, 3).unwrap();
        assert_eq!((hp.even, hp.odd, hp.conclusive), (0, 1, true), "{hp:?}");
    }

    #[test]
    fn window_precondition() {
        assert!(matches!(negative_cyclic(&alg("point"), &DegreeWindow::new(5), 3), Err(NcgError::Window(_))));
    }

    #[test]
    fn u_zero_recovers_hochschild() {
        let a = alg("dual_numbers");
        let w = DegreeWindow::new(6);
        let nc = negative_cyclic(&a, &w, 1).unwrap();
        let hh = hh_ranks(&a, &w.with_weights(0, 6)).unwrap();
        let strings: usize = nc.stable_strings().map(|(_, s)| s.multiplicity).sum();
        assert_eq!(strings, hh.entries.iter().map(|e| e.rank).sum::<usize>());
    }

    #[test]
    fn degeneration_verdicts() {
        let w = DegreeWindow::new(6);
        assert_eq!(degeneration_check(&alg("dual_numbers"), &w, 3).unwrap().verdict, Verdict::FiniteTorsionFound);
        assert_eq!(degeneration_check(&alg("mat:m=2"), &w, 2).unwrap().verdict, Verdict::CollapsesInWindow);
    }
}
