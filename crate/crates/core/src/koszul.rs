//! Koszul homology of `R = S/I` with respect to a suffix `x_{n-k+1}, ..., x_n`
//! of the variables, and the reduction of a codimension-two quotient to an
//! Artinian one by killing an almost regular sequence.
//!
//! The almost regular sequence is always taken as `x_n, x_{n-1}, ...`. For
//! strongly stable ideals this order is almost regular; for other ideals the
//! reduction may be reported inapplicable.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{betti_table, stats};
use crate::error::{Error, Result};
use crate::hilbert::{self, annihilator_series};
use crate::ideal::MonomialIdeal;
use crate::monomial::monomials_of_degree;
use crate::strand::strand_homology;

/// `dim_K H_i(k; R)_j` for `j = 0..=degree_bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulStrandTable {
    pub k: usize,
    pub degree_bound: u32,
    /// Every computed `(i, j)`, zeros included.
    pub dims: BTreeMap<(usize, u32), usize>,
    /// Some row `i >= 1` is still nonzero at the degree bound.
    pub truncated: bool,
}

impl KoszulStrandTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `M_{i,k} = max({j : H_i(k;R)_j ≠ 0} ∪ {0})` within the computed range.
    pub fn max_degree(&self, i: usize) -> u32 {
        self.dims
            .iter()
            .filter(|(&(r, _), &d)| r == i && d > 0)
            .map(|(&(_, j), _)| j)
            .max()
            .unwrap_or(0)
    }

    /// Row `i` for `j = 0..=degree_bound`.
    pub fn row(&self, i: usize) -> Vec<usize> {
        (0..=self.degree_bound).map(|j| self.get(i, j)).collect()
    }
}

/// Homology of `K(x_{n-k+1}, ..., x_n; S/I)` in degrees `0..=degree_bound`,
/// summed over the multigraded strands of each degree.
pub fn koszul_strands(
    ideal: &MonomialIdeal,
    k: usize,
    degree_bound: u32,
) -> Result<KoszulStrandTable> {
    let n = ideal.nvars();
    if k == 0 || k > n {
        return Err(Error::input(format!("sequence length {k} outside 1..={n}")));
    }
    let allowed: u64 = ((n - k)..n).fold(0, |m, v| m | (1 << v));
    let mut dims = BTreeMap::new();
    for i in 0..=k {
        for j in 0..=degree_bound {
            dims.insert((i, j), 0usize);
        }
    }
    for j in 0..=degree_bound {
        let degree = monomials_of_degree(n, j);
        let row: Vec<usize> = degree
            .par_iter()
            .map(|c| strand_homology(ideal, c, allowed))
            .reduce(
                || vec![0; k + 1],
                |mut acc, h| {
                    for (i, v) in h.into_iter().enumerate() {
                        acc[i] += v;
                    }
                    acc
                },
            );
        for (i, v) in row.into_iter().enumerate() {
            *dims.get_mut(&(i, j)).unwrap() += v;
        }
    }
    let truncated = (1..=k).any(|i| dims[&(i, degree_bound)] > 0);
    Ok(KoszulStrandTable {
        k,
        degree_bound,
        dims,
        truncated,
    })
}

/// Largest `t` such that `x_n, x_{n-1}, ..., x_{n-t+1}` is an almost regular
/// sequence on `S/I`.
pub fn almost_regular_suffix(ideal: &MonomialIdeal) -> Result<usize> {
    let mut cur = ideal.clone();
    let mut t = 0;
    while cur.nvars() > 0 {
        let last = cur.nvars();
        if !hilbert::finite_length_colon(&cur, last)? {
            break;
        }
        cur = cur.kill_variables(&[last])?;
        t += 1;
    }
    Ok(t)
}

/// One step `R -> R / x R` of the reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientStep {
    /// 1-based index of the killed variable in the original ring.
    pub variable: usize,
    pub dim_before: usize,
    pub dim_after: usize,
    pub e_before: i64,
    pub e_after: i64,
    /// Length of `(0 :_R x)`.
    pub annihilator_length: i64,
    /// `dim` drops by one when positive; `e` is preserved when `dim > 1`;
    /// `e(R) = e(R/xR) - l(0:x) <= e(R/xR)` when `dim = 1`.
    pub laws_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionChecks {
    pub m1_bound: bool,
    pub m2_bound: bool,
    pub koszul_shift_identity: bool,
    pub multiplicity_bound: bool,
    pub intermediate_chain: bool,
    pub quotient_laws: bool,
    pub strands_vanish_past_bound: bool,
}

impl ReductionChecks {
    pub fn all(&self) -> bool {
        self.m1_bound
            && self.m2_bound
            && self.koszul_shift_identity
            && self.multiplicity_bound
            && self.intermediate_chain
            && self.quotient_laws
            && self.strands_vanish_past_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub suffix_length: usize,
    /// `Ĩ` in the two surviving variables.
    pub reduced_ideal: MonomialIdeal,
    /// `M_1, M_2` of `S/I`.
    pub max_shifts: [u32; 2],
    /// `M̃_1, M̃_2` of `S̃/Ĩ`.
    pub reduced_max_shifts: [u32; 2],
    /// `M̃_{1,1}`
    pub koszul_m11: u32,
    /// `M̃_{2,2}`
    pub koszul_m22: u32,
    /// `M_{1,n-1}`
    pub koszul_m1_penultimate: u32,
    pub e: i64,
    pub reduced_e: i64,
    pub steps: Vec<QuotientStep>,
    pub checks: ReductionChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ReductionOutcome {
    Applicable(Box<ReductionReport>),
    Inapplicable { reason: String },
}

impl ReductionOutcome {
    pub fn report(&self) -> Option<&ReductionReport> {
        match self {
            ReductionOutcome::Applicable(r) => Some(r),
            ReductionOutcome::Inapplicable { .. } => None,
        }
    }
}

fn rows_vanish_past(table: &KoszulStrandTable, reg: i64, rows: &[usize]) -> bool {
    rows.iter().all(|&i| {
        table
            .dims
            .iter()
            .filter(|(&(r, j), _)| r == i && j as i64 > reg + i as i64)
            .all(|(_, &d)| d == 0)
    })
}

/// Kills `x_n, ..., x_3`, then compares the shifts and multiplicity of `S/I`
/// with those of the Artinian reduction `S̃/Ĩ`.
pub fn reduction_report(ideal: &MonomialIdeal) -> Result<ReductionOutcome> {
    let n = ideal.nvars();
    let summary = hilbert::summarize(ideal)?;
    if summary.codim != 2 {
        return Ok(ReductionOutcome::Inapplicable {
            reason: format!("codimension is {}, not 2", summary.codim),
        });
    }
    let suffix = almost_regular_suffix(ideal)?;
    if suffix + 2 < n {
        return Ok(ReductionOutcome::Inapplicable {
            reason: format!(
                "x_n, x_(n-1), ... is almost regular only to length {suffix}, need {}",
                n - 2
            ),
        });
    }

    let mut steps = Vec::with_capacity(n - 2);
    let mut cur = ideal.clone();
    let mut cur_summary = summary.clone();
    while cur.nvars() > 2 {
        let last = cur.nvars();
        let ann = annihilator_series(&cur, last)?.expect("suffix check guarantees finite length");
        let next = cur.kill_variables(&[last])?;
        let next_summary = hilbert::summarize(&next)?;
        let (d0, d1) = (cur_summary.dim, next_summary.dim);
        let (e0, e1) = (cur_summary.multiplicity, next_summary.multiplicity);
        let len = ann.eval_at_one();
        let laws_hold = (d0 == 0 || d1 + 1 == d0)
            && match d0 {
                0 => true,
                1 => e0 == e1 - len && e0 <= e1,
                _ => e0 == e1,
            };
        steps.push(QuotientStep {
            variable: last,
            dim_before: d0,
            dim_after: d1,
            e_before: e0,
            e_after: e1,
            annihilator_length: len,
            laws_hold,
        });
        cur = next;
        cur_summary = next_summary;
    }
    let reduced = cur;
    let reduced_e = cur_summary.multiplicity;

    let (table, _) = betti_table(ideal, None)?;
    let st = stats(&table)?;
    let (rtable, _) = betti_table(&reduced, None)?;
    let rst = stats(&rtable)?;
    if st.pdim < 2 || rst.pdim < 2 {
        return Err(Error::input(
            "codimension-two quotient with projective dimension below 2",
        ));
    }
    let max_shifts = [st.max_shift(1), st.max_shift(2)];
    let reduced_max_shifts = [rst.max_shift(1), rst.max_shift(2)];

    let bound = (rst.reg + 3) as u32;
    let h1 = koszul_strands(&reduced, 1, bound)?;
    let h2 = koszul_strands(&reduced, 2, bound)?;
    let koszul_m11 = h1.max_degree(1);
    let koszul_m22 = h2.max_degree(2);
    let full = koszul_strands(ideal, n - 1, (st.reg + 3) as u32)?;
    let koszul_m1_penultimate = full.max_degree(1);

    let checks = ReductionChecks {
        m1_bound: reduced_max_shifts[0] <= max_shifts[0],
        m2_bound: reduced_max_shifts[1] <= max_shifts[1],
        koszul_shift_identity: koszul_m22 == koszul_m11 + 1 && koszul_m22 == reduced_max_shifts[1],
        multiplicity_bound: summary.multiplicity <= reduced_e,
        intermediate_chain: koszul_m11 <= koszul_m1_penultimate
            && koszul_m1_penultimate < max_shifts[1],
        quotient_laws: steps.iter().all(|s| s.laws_hold),
        strands_vanish_past_bound: rows_vanish_past(&h1, rst.reg, &[1])
            && rows_vanish_past(&h2, rst.reg, &[1, 2])
            && rows_vanish_past(&full, st.reg, &[1]),
    };
    Ok(ReductionOutcome::Applicable(Box::new(ReductionReport {
        n,
        suffix_length: suffix,
        reduced_ideal: reduced,
        max_shifts,
        reduced_max_shifts,
        koszul_m11,
        koszul_m22,
        koszul_m1_penultimate,
        e: summary.multiplicity,
        reduced_e,
        steps,
        checks,
    })))
}
