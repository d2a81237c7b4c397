//! Exact checkers for the multiplicity bounds and duality identities.
//!
//! Every comparison is made on integers by cross-multiplying, e.g.
//! `e · c! <= M_1 ⋯ M_c`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::betti::{
    betti_a_stable, betti_oracle, betti_table, is_componentwise_linear, regularity_a_stable, stats,
    BettiRoute, BettiTable, Regularity, ResolutionStats, ORACLE_GENERATOR_CAP,
};
use crate::error::{Error, Result};
use crate::hilbert::{self, HilbertSummary};
use crate::ideal::MonomialIdeal;
use crate::koszul::{reduction_report, ReductionOutcome};
use crate::monomial::BoundVector;
use crate::simplicial::SimplicialComplex;
use crate::stability::is_a_stable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable(String),
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn skip(reason: impl Into<String>) -> Self {
        Verdict::Inapplicable(reason.into())
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// `pass`, `fail` or `inapplicable`.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable(_) => "inapplicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Inapplicable(why) => write!(f, "inapplicable ({why})"),
            v => f.write_str(v.label()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckName {
    /// `e · c! <= M_1 ⋯ M_c`
    C2,
    /// `m_1 ⋯ m_p <= e · p! <= M_1 ⋯ M_p` for Cohen–Macaulay quotients.
    C1,
    /// `e · p! = d_1 ⋯ d_p` for pure Cohen–Macaulay quotients.
    Hm,
    /// `c <= b(S/I)` and `e <= C(reg + c, c)`.
    Weak,
    /// `M_i = reg + i` for `i <= c` implies the `c2` bound.
    Main,
    /// a-stable implies componentwise linear with `reg(I)` the top generator degree.
    Cwl,
    /// Duality identities for the Stanley–Reisner complex of a squarefree ideal.
    Dual,
    /// The a-stable closed formula agrees with the oracle.
    Astable,
    /// Codimension-two reduction inequalities.
    Reduce,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::C2,
        CheckName::C1,
        CheckName::Hm,
        CheckName::Weak,
        CheckName::Main,
        CheckName::Cwl,
        CheckName::Dual,
        CheckName::Astable,
        CheckName::Reduce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::C2 => "c2",
            CheckName::C1 => "c1",
            CheckName::Hm => "hm",
            CheckName::Weak => "weak",
            CheckName::Main => "main",
            CheckName::Cwl => "cwl",
            CheckName::Dual => "dual",
            CheckName::Astable => "astable",
            CheckName::Reduce => "reduce",
        }
    }

    /// Parses a comma-separated list such as `c2,weak,dual`.
    pub fn parse_list(s: &str) -> Result<Vec<CheckName>> {
        let mut out: Vec<CheckName> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c: CheckName = part.parse()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::input("empty check list"));
        }
        Ok(out)
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let name = match lower.as_str() {
            "conjecture2" => "c2",
            "conjecture1" => "c1",
            "huneke-miller" => "hm",
            other => other,
        };
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == name)
            .ok_or_else(|| Error::input(format!("unknown check '{s}'")))
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

fn product(values: &[u32]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, &v| acc * BigInt::from(v))
}

fn binomial_big(n: i64, k: usize) -> BigInt {
    if n < k as i64 || n < 0 {
        return BigInt::from(0);
    }
    (0..k as i64).fold(BigInt::one(), |acc, t| {
        acc * BigInt::from(n - t) / BigInt::from(t + 1)
    })
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

fn ser_opt_ratio<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_ratio(r, s),
        None => s.serialize_none(),
    }
}

fn ser_big<S: Serializer>(b: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(b)
}

/// Short content hash of the canonical generator list.
pub fn ideal_id(ideal: &MonomialIdeal) -> String {
    let digest = Sha256::digest(ideal.to_json().as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// The bound vector under which `I` is a-stable: `hint` if it applies,
/// otherwise `(∞,…,∞)` for stable ideals or `(2,…,2)` for squarefree stable
/// ones.
pub fn stability_bound(ideal: &MonomialIdeal, hint: Option<&BoundVector>) -> Option<BoundVector> {
    let n = ideal.nvars();
    [
        hint.cloned(),
        Some(BoundVector::infinite(n)),
        Some(BoundVector::squarefree(n)),
    ]
    .into_iter()
    .flatten()
    .find(|a| a.len() == n && is_a_stable(ideal, a))
}

/// Everything the checkers need, computed once.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub ideal: MonomialIdeal,
    pub summary: HilbertSummary,
    pub table: BettiTable,
    pub route: BettiRoute,
    pub stats: ResolutionStats,
    pub hint: Option<BoundVector>,
}

impl Analysis {
    pub fn new(ideal: &MonomialIdeal, hint: Option<&BoundVector>) -> Result<Self> {
        if let Some(a) = hint {
            a.check_len(ideal.nvars())?;
        }
        let summary = hilbert::summarize(ideal)?;
        let (table, route) = betti_table(ideal, hint)?;
        let stats = stats(&table)?;
        if summary.codim > stats.pdim {
            return Err(Error::input(format!(
                "codimension {} exceeds projective dimension {}",
                summary.codim, stats.pdim
            )));
        }
        Ok(Analysis {
            ideal: ideal.clone(),
            summary,
            table,
            route,
            stats,
            hint: hint.cloned(),
        })
    }

    pub fn e(&self) -> i64 {
        self.summary.multiplicity
    }

    pub fn codim(&self) -> usize {
        self.summary.codim
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.stats.pdim == self.summary.codim
    }

    /// `(M_1 ⋯ M_c) / c!`
    pub fn upper_bound(&self) -> BigRational {
        let c = self.codim();
        BigRational::new(product(&self.stats.max_shifts[..c]), factorial(c))
    }

    /// `(m_1 ⋯ m_p) / p!`, reported for Cohen–Macaulay quotients.
    pub fn lower_bound(&self) -> Option<BigRational> {
        let p = self.stats.pdim;
        self.is_cohen_macaulay()
            .then(|| BigRational::new(product(&self.stats.min_shifts), factorial(p)))
    }

    /// `C(reg + c, c)`
    pub fn weak_bound(&self) -> BigInt {
        binomial_big(self.stats.reg + self.codim() as i64, self.codim())
    }

    /// `e · c! / (M_1 ⋯ M_c)`
    pub fn tightness(&self) -> Option<BigRational> {
        let c = self.codim();
        (c > 0).then(|| {
            BigRational::new(
                BigInt::from(self.e()) * factorial(c),
                product(&self.stats.max_shifts[..c]),
            )
        })
    }

    /// `M_i = reg + i` for `i = 1..=c`.
    pub fn main_hypothesis(&self) -> bool {
        (1..=self.codim()).all(|i| self.stats.max_shift(i) as i64 == self.stats.reg + i as i64)
    }
}

pub fn check_conjecture2(a: &Analysis) -> Verdict {
    let c = a.codim();
    if c == 0 {
        return Verdict::skip("zero ideal");
    }
    let lhs = BigInt::from(a.e()) * factorial(c);
    Verdict::from_bool(lhs <= product(&a.stats.max_shifts[..c]))
}

pub fn check_conjecture1(a: &Analysis) -> Verdict {
    if a.codim() == 0 {
        return Verdict::skip("zero ideal");
    }
    if !a.is_cohen_macaulay() {
        return Verdict::skip("not Cohen-Macaulay");
    }
    let p = a.stats.pdim;
    let mid = BigInt::from(a.e()) * factorial(p);
    Verdict::from_bool(product(&a.stats.min_shifts) <= mid && mid <= product(&a.stats.max_shifts))
}

pub fn check_huneke_miller(a: &Analysis) -> Verdict {
    if a.codim() == 0 {
        return Verdict::skip("zero ideal");
    }
    if !a.is_cohen_macaulay() {
        return Verdict::skip("not Cohen-Macaulay");
    }
    let Some(d) = &a.stats.pure_degrees else {
        return Verdict::skip("resolution not pure");
    };
    Verdict::from_bool(BigInt::from(a.e()) * factorial(a.stats.pdim) == product(d))
}

pub fn check_weak_bound(a: &Analysis) -> Verdict {
    if a.codim() == 0 {
        return Verdict::skip("zero ideal");
    }
    Verdict::from_bool(a.codim() <= a.stats.corner && BigInt::from(a.e()) <= a.weak_bound())
}

/// `Inapplicable` when the shift hypothesis fails; otherwise the `c2` verdict.
pub fn check_main_result_hypothesis(a: &Analysis) -> Verdict {
    if a.codim() == 0 {
        return Verdict::skip("zero ideal");
    }
    if !a.main_hypothesis() {
        return Verdict::skip("M_i = reg + i fails");
    }
    check_conjecture2(a)
}

pub fn check_componentwise_linear(a: &Analysis) -> Result<Verdict> {
    let Some(bound) = stability_bound(&a.ideal, a.hint.as_ref()) else {
        return Ok(Verdict::skip("not a-stable"));
    };
    let cwl = is_componentwise_linear(&a.ideal)?;
    let reg_ideal = a.table.to_ideal_view().regularity();
    let top = regularity_a_stable(&a.ideal, &bound)?;
    Ok(Verdict::from_bool(cwl && reg_ideal == top))
}

/// Compares the closed formula with the oracle entrywise.
pub fn check_a_stable_formula(a: &Analysis) -> Result<Verdict> {
    let Some(bound) = stability_bound(&a.ideal, a.hint.as_ref()) else {
        return Ok(Verdict::skip("not a-stable"));
    };
    if a.ideal.num_gens() > ORACLE_GENERATOR_CAP {
        return Ok(Verdict::skip("oracle cap exceeded"));
    }
    let oracle = if a.route == BettiRoute::Oracle {
        a.table.clone()
    } else {
        betti_oracle(&a.ideal)?
    };
    let formula = betti_a_stable(&a.ideal, &bound)?.to_quotient_view();
    Ok(Verdict::from_bool(formula == oracle))
}

pub fn check_reduction(ideal: &MonomialIdeal) -> Result<Verdict> {
    Ok(match reduction_report(ideal)? {
        ReductionOutcome::Applicable(r) => Verdict::from_bool(r.checks.all()),
        ReductionOutcome::Inapplicable { reason } => Verdict::Inapplicable(reason),
    })
}

/// Identities between a complex `Δ` and the Stanley–Reisner ideal of `Δ*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    /// `e(S/I_Δ)`
    pub e: i64,
    /// `f_{d-1}(Δ)`
    pub top_faces: u64,
    pub codim: usize,
    pub pdim: usize,
    pub dual_ideal: MonomialIdeal,
    /// `a(I_{Δ*})`
    pub dual_initial_degree: u32,
    /// `β_{0,a}(I_{Δ*})`
    pub dual_initial_count: u64,
    /// `reg(I_{Δ*})`
    pub dual_reg: Regularity,
    /// The dual ideal from minimal non-faces of `Δ*` equals the one from
    /// complemented facets of `Δ`.
    pub paths_agree: bool,
    pub multiplicity_identity: bool,
    pub codim_identity: bool,
    pub pdim_identity: bool,
    pub verdict: Verdict,
}

pub fn check_dual_identities(cx: &SimplicialComplex) -> Result<DualReport> {
    if !cx.is_proper() {
        return Err(Error::input("duality identities need a proper complex"));
    }
    let n = cx.nvertices();
    let ideal = cx.stanley_reisner_ideal();
    let summary = hilbert::summarize(&ideal)?;
    let (table, _) = betti_table(&ideal, None)?;
    let st = stats(&table)?;

    let dual_ideal = cx.alexander_dual().stanley_reisner_ideal();
    let by_facets = MonomialIdeal::new(n, cx.facet_duality_generators()?)?;
    let paths_agree = dual_ideal == by_facets;

    let (dual_table, _) = betti_table(&dual_ideal, None)?;
    let dual_view = dual_table.to_ideal_view();
    let a = dual_ideal
        .initial_degree()
        .ok_or_else(|| Error::input("dual ideal of a proper complex is zero"))?;
    let dual_initial_count = dual_view.get(0, a);
    let dual_reg = dual_view.regularity();
    let top_faces = cx.facet_count_top();

    let multiplicity_identity =
        summary.multiplicity as u64 == dual_initial_count && top_faces == dual_initial_count;
    let codim_identity = summary.codim == a as usize;
    let pdim_identity = dual_reg == Regularity::Finite(st.pdim as i64);
    let verdict =
        Verdict::from_bool(paths_agree && multiplicity_identity && codim_identity && pdim_identity);
    Ok(DualReport {
        e: summary.multiplicity,
        top_faces,
        codim: summary.codim,
        pdim: st.pdim,
        dual_ideal,
        dual_initial_degree: a,
        dual_initial_count,
        dual_reg,
        paths_agree,
        multiplicity_identity,
        codim_identity,
        pdim_identity,
        verdict,
    })
}

fn check_dual_for_ideal(ideal: &MonomialIdeal) -> Result<Verdict> {
    if !ideal.is_squarefree() {
        return Ok(Verdict::skip("not squarefree"));
    }
    let cx = SimplicialComplex::from_ideal(ideal)?;
    if !cx.is_proper() {
        return Ok(Verdict::skip("complex is not proper"));
    }
    Ok(check_dual_identities(&cx)?.verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub e: i64,
    pub codim: usize,
    pub dim: usize,
    pub pdim: usize,
    pub reg: i64,
    /// `b(S/I)`
    pub corner: usize,
    pub max_shifts: Vec<u32>,
    pub min_shifts: Vec<u32>,
    pub cm: bool,
    pub pure: bool,
    pub main_hypothesis: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub upper_bound: BigRational,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub lower_bound: Option<BigRational>,
    #[serde(serialize_with = "ser_big")]
    pub weak_bound: BigInt,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub tightness: Option<BigRational>,
    pub betti_route: BettiRoute,
}

impl Invariants {
    fn of(a: &Analysis) -> Self {
        Invariants {
            e: a.e(),
            codim: a.codim(),
            dim: a.summary.dim,
            pdim: a.stats.pdim,
            reg: a.stats.reg,
            corner: a.stats.corner,
            max_shifts: a.stats.max_shifts.clone(),
            min_shifts: a.stats.min_shifts.clone(),
            cm: a.is_cohen_macaulay(),
            pure: a.stats.pure,
            main_hypothesis: a.main_hypothesis(),
            upper_bound: a.upper_bound(),
            lower_bound: a.lower_bound(),
            weak_bound: a.weak_bound(),
            tightness: a.tightness(),
            betti_route: a.route,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub n: usize,
    pub num_gens: usize,
    pub max_degree: u32,
    /// `None` when no exact Betti route applies.
    pub invariants: Option<Invariants>,
    pub verdicts: BTreeMap<CheckName, Verdict>,
}

impl BoundReport {
    pub fn any_fail(&self) -> bool {
        self.verdicts.values().any(Verdict::is_fail)
    }

    pub fn verdict(&self, c: CheckName) -> Option<&Verdict> {
        self.verdicts.get(&c)
    }
}

pub fn run_checks(
    ideal: &MonomialIdeal,
    checks: &[CheckName],
    hint: Option<&BoundVector>,
) -> Result<BoundReport> {
    let mut verdicts = BTreeMap::new();
    let analysis = match Analysis::new(ideal, hint) {
        Ok(a) => Some(a),
        Err(e @ Error::OracleCap { .. }) => {
            for &c in checks {
                verdicts.insert(c, Verdict::skip(e.to_string()));
            }
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(a) = &analysis {
        for &c in checks {
            let v = match c {
                CheckName::C2 => check_conjecture2(a),
                CheckName::C1 => check_conjecture1(a),
                CheckName::Hm => check_huneke_miller(a),
                CheckName::Weak => check_weak_bound(a),
                CheckName::Main => check_main_result_hypothesis(a),
                CheckName::Cwl => check_componentwise_linear(a)?,
                CheckName::Dual => check_dual_for_ideal(ideal)?,
                CheckName::Astable => check_a_stable_formula(a)?,
                CheckName::Reduce => check_reduction(ideal)?,
            };
            verdicts.insert(c, v);
        }
    }
    Ok(BoundReport {
        id: ideal_id(ideal),
        n: ideal.nvars(),
        num_gens: ideal.num_gens(),
        max_degree: ideal.max_degree().unwrap_or(0),
        invariants: analysis.as_ref().map(Invariants::of),
        verdicts,
    })
}
