//! Graded Betti tables by three independent routes, and the resolution
//! statistics derived from them.
//!
//! A [`BettiTable`] records whether it describes `S/I` or `I`; the two views
//! differ by a homological shift and conversions are explicit.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert;
use crate::homology::faces_chain_complex;
use crate::ideal::MonomialIdeal;
use crate::monomial::{BoundVector, Monomial};
use crate::simplicial::SimplicialComplex;
use crate::stability::is_a_stable;
use crate::strand::strand_homology;

/// Default generator cap for [`betti_oracle`].
pub const ORACLE_GENERATOR_CAP: usize = 18;

/// Largest vertex count the automatic Hochster fallback accepts.
pub const HOCHSTER_MAX_VERTICES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    /// Entries are `β_{i,j}(S/I)`.
    OverQuotient,
    /// Entries are `β_{i,j}(I)`.
    OverIdeal,
}

/// Castelnuovo–Mumford regularity; the zero module has regularity `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regularity {
    NegInfinity,
    Finite(i64),
}

impl Regularity {
    pub fn finite(self) -> Option<i64> {
        match self {
            Regularity::Finite(r) => Some(r),
            Regularity::NegInfinity => None,
        }
    }
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::NegInfinity => write!(f, "-inf"),
            Regularity::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Regularity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Regularity::Finite(r) => s.serialize_i64(*r),
            Regularity::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    subject: Subject,
    n: usize,
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    /// Zero entries are dropped.
    pub fn from_entries(
        subject: Subject,
        n: usize,
        entries: impl IntoIterator<Item = ((usize, u32), u64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        BettiTable {
            subject,
            n,
            entries: map,
        }
    }

    pub fn subject(&self) -> Subject {
        self.subject
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// `β_{i,j}`, zero when absent.
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Sum of the entries in column `i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, v)| v)
            .sum()
    }

    /// `max { j - i : β_{i,j} ≠ 0 }` of whichever module the table describes.
    pub fn regularity(&self) -> Regularity {
        self.entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
            .map_or(Regularity::NegInfinity, Regularity::Finite)
    }

    /// `β_{i,j}(I) = β_{i+1,j}(S/I)`.
    pub fn to_ideal_view(&self) -> BettiTable {
        match self.subject {
            Subject::OverIdeal => self.clone(),
            Subject::OverQuotient => BettiTable {
                subject: Subject::OverIdeal,
                n: self.n,
                entries: self
                    .entries
                    .iter()
                    .filter(|((i, _), _)| *i >= 1)
                    .map(|(&(i, j), &v)| ((i - 1, j), v))
                    .collect(),
            },
        }
    }

    /// Inverse of [`Self::to_ideal_view`]. The unit ideal (`β_{0,0}(I) = 1`)
    /// has the empty quotient table.
    pub fn to_quotient_view(&self) -> BettiTable {
        match self.subject {
            Subject::OverQuotient => self.clone(),
            Subject::OverIdeal => {
                if self.get(0, 0) > 0 {
                    return BettiTable::from_entries(Subject::OverQuotient, self.n, []);
                }
                let mut entries: BTreeMap<(usize, u32), u64> = self
                    .entries
                    .iter()
                    .map(|(&(i, j), &v)| ((i + 1, j), v))
                    .collect();
                entries.insert((0, 0), 1);
                BettiTable {
                    subject: Subject::OverQuotient,
                    n: self.n,
                    entries,
                }
            }
        }
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: u32,
            beta: u64,
        }
        #[derive(Serialize)]
        struct Table {
            subject: Subject,
            n: usize,
            entries: Vec<Entry>,
        }
        Table {
            subject: self.subject,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &beta)| Entry { i, j, beta })
                .collect(),
        }
        .serialize(s)
    }
}

/// Distinct lcms of nonempty subsets of `G(I)`.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut all: Vec<Monomial> = Vec::new();
    for g in ideal.gens() {
        let fresh: Vec<Monomial> = all
            .iter()
            .map(|l| l.lcm(g))
            .chain(std::iter::once(g.clone()))
            .filter(|m| !seen.contains(m))
            .collect();
        for m in fresh {
            if seen.insert(m.clone()) {
                all.push(m);
            }
        }
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    all
}

/// `β_{i,j}(S/I)` from the Koszul strands over the lcm lattice of `G(I)`.
pub fn betti_oracle(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_oracle_with_cap(ideal, ORACLE_GENERATOR_CAP)
}

pub fn betti_oracle_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<BettiTable> {
    if ideal.num_gens() > cap {
        return Err(Error::OracleCap {
            count: ideal.num_gens(),
            cap,
        });
    }
    let n = ideal.nvars();
    let mut degrees = lcm_lattice(ideal);
    degrees.insert(0, Monomial::one(n));
    let all_vars = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let compute = |a: &Monomial| {
        let h = strand_homology(ideal, a, all_vars);
        let d = a.degree();
        h.into_iter()
            .enumerate()
            .filter(|(_, v)| *v > 0)
            .map(|(i, v)| ((i, d), v as u64))
            .collect::<Vec<_>>()
    };
    let parts: Vec<Vec<((usize, u32), u64)>> = if degrees.len() > 32 {
        degrees.par_iter().map(compute).collect()
    } else {
        degrees.iter().map(compute).collect()
    };
    Ok(BettiTable::from_entries(
        Subject::OverQuotient,
        n,
        parts.into_iter().flatten(),
    ))
}

/// Hochster's formula: `β_{i,W}(S/I_Δ) = dim H̃_{|W|-i-1}(Δ_W)`.
pub fn betti_hochster(cx: &SimplicialComplex) -> BettiTable {
    let n = cx.nvertices();
    if cx.is_void() {
        return BettiTable::from_entries(Subject::OverQuotient, n, []);
    }
    let faces = cx.faces();
    let compute = |w: u64| {
        let sub: Vec<u64> = faces.iter().copied().filter(|f| f & w == *f).collect();
        let size = w.count_ones() as i64;
        let h = faces_chain_complex(&sub).homology_dims();
        h.into_iter()
            .enumerate()
            .filter(|(_, v)| *v > 0)
            .filter_map(|(idx, v)| {
                let k = idx as i64 - 1;
                let i = size - k - 1;
                (i >= 0).then_some(((i as usize, size as u32), v as u64))
            })
            .collect::<Vec<_>>()
    };
    let subsets: Vec<u64> = (0..(1u64 << n)).collect();
    let parts: Vec<Vec<((usize, u32), u64)>> = if n >= 6 {
        subsets.par_iter().map(|&w| compute(w)).collect()
    } else {
        subsets.iter().map(|&w| compute(w)).collect()
    };
    BettiTable::from_entries(Subject::OverQuotient, n, parts.into_iter().flatten())
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

/// `β_{i,i+j}(I) = Σ_{u ∈ G(I), |u| = j} C(m(u) - 1 - l(u), i)` for a-stable `I`.
pub fn betti_a_stable(ideal: &MonomialIdeal, a: &BoundVector) -> Result<BettiTable> {
    if !is_a_stable(ideal, a) {
        return Err(Error::NotAStable(a.to_string()));
    }
    let n = ideal.nvars();
    if ideal.is_unit() {
        return Ok(BettiTable::from_entries(
            Subject::OverIdeal,
            n,
            [((0, 0), 1)],
        ));
    }
    let mut entries = Vec::new();
    for u in ideal.gens() {
        let top = (u.m_index()? - 1 - u.l_value(a)?) as i64;
        let j = u.degree();
        for i in 0..=top {
            entries.push(((i as usize, j + i as u32), binomial(top, i)));
        }
    }
    Ok(BettiTable::from_entries(Subject::OverIdeal, n, entries))
}

/// `reg(I)` of an a-stable ideal: its largest generator degree.
pub fn regularity_a_stable(ideal: &MonomialIdeal, a: &BoundVector) -> Result<Regularity> {
    if !is_a_stable(ideal, a) {
        return Err(Error::NotAStable(a.to_string()));
    }
    Ok(ideal
        .max_degree()
        .map_or(Regularity::NegInfinity, |d| Regularity::Finite(d as i64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BettiRoute {
    Oracle,
    AStableFormula,
    Hochster,
}

/// Picks the cheapest exact route: the oracle within its cap, then the
/// a-stable formula (for `hint`, stable, or squarefree stable ideals), then
/// Hochster's formula for squarefree ideals.
pub fn betti_table(
    ideal: &MonomialIdeal,
    hint: Option<&BoundVector>,
) -> Result<(BettiTable, BettiRoute)> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.num_gens() <= ORACLE_GENERATOR_CAP {
        return Ok((betti_oracle(ideal)?, BettiRoute::Oracle));
    }
    let n = ideal.nvars();
    let candidates = [
        hint.cloned(),
        Some(BoundVector::infinite(n)),
        Some(BoundVector::squarefree(n)),
    ];
    for a in candidates.iter().flatten() {
        if a.len() == n && is_a_stable(ideal, a) {
            let t = betti_a_stable(ideal, a)?.to_quotient_view();
            return Ok((t, BettiRoute::AStableFormula));
        }
    }
    if ideal.is_squarefree() && n <= HOCHSTER_MAX_VERTICES {
        let cx = SimplicialComplex::from_ideal(ideal)?;
        return Ok((betti_hochster(&cx), BettiRoute::Hochster));
    }
    Err(Error::OracleCap {
        count: ideal.num_gens(),
        cap: ORACLE_GENERATOR_CAP,
    })
}

/// Numbers read off a minimal free resolution of `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionStats {
    /// `M_1, ..., M_p`
    pub max_shifts: Vec<u32>,
    /// `m_1, ..., m_p`
    pub min_shifts: Vec<u32>,
    pub pdim: usize,
    /// `reg(S/I)`
    pub reg: i64,
    /// `a(I)`; `None` for the zero ideal.
    pub initial_degree: Option<u32>,
    /// `b(S/I)`: the largest `i` with `β_{i,i+reg} ≠ 0`.
    pub corner: usize,
    pub pure: bool,
    pub quasipure: bool,
    pub pure_degrees: Option<Vec<u32>>,
}

impl ResolutionStats {
    /// `M_i`, 1-based.
    pub fn max_shift(&self, i: usize) -> u32 {
        self.max_shifts[i - 1]
    }
}

pub fn stats(table: &BettiTable) -> Result<ResolutionStats> {
    if table.subject() != Subject::OverQuotient {
        return Err(Error::input(
            "resolution statistics need the S/I view of the table",
        ));
    }
    if table.is_empty() {
        return Err(Error::UnitIdeal);
    }
    let pdim = table.length().unwrap_or(0);
    let column = |i: usize| {
        table
            .entries()
            .keys()
            .filter(move |(k, _)| *k == i)
            .map(|(_, j)| *j)
    };
    let max_shifts: Vec<u32> = (1..=pdim).map(|i| column(i).max().unwrap()).collect();
    let min_shifts: Vec<u32> = (1..=pdim).map(|i| column(i).min().unwrap()).collect();
    let reg = table.regularity().finite().unwrap_or(0);
    let corner = table
        .entries()
        .keys()
        .filter(|&&(i, j)| j as i64 - i as i64 == reg)
        .map(|&(i, _)| i)
        .max()
        .unwrap_or(0);
    let pure = max_shifts == min_shifts;
    let quasipure = (2..=pdim).all(|i| min_shifts[i - 1] >= max_shifts[i - 2]);
    Ok(ResolutionStats {
        pure_degrees: pure.then(|| max_shifts.clone()),
        initial_degree: min_shifts.first().copied(),
        max_shifts,
        min_shifts,
        pdim,
        reg,
        corner,
        pure,
        quasipure,
    })
}

/// `reg(I_{<=k}) <= k` for every `k` from `a(I)` to the top generator degree.
pub fn is_componentwise_linear(ideal: &MonomialIdeal) -> Result<bool> {
    let (Some(lo), Some(hi)) = (ideal.initial_degree(), ideal.max_degree()) else {
        return Ok(true);
    };
    for k in lo..=hi {
        let trunc = ideal.truncate(k);
        if trunc.is_unit() {
            continue;
        }
        let (t, _) = betti_table(&trunc, None)?;
        if t.to_ideal_view()
            .regularity()
            .cmp(&Regularity::Finite(k as i64))
            == Ordering::Greater
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `pdim(S/I) = codim(S/I)`.
pub fn is_cohen_macaulay(ideal: &MonomialIdeal) -> Result<bool> {
    let (t, _) = betti_table(ideal, None)?;
    let s = stats(&t)?;
    let h = hilbert::summarize(ideal)?;
    Ok(s.pdim == h.codim)
}
