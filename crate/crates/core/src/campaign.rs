//! Seeded instance families and the parallel campaign runner.
//!
//! Instance `k` of a campaign draws all of its randomness from
//! `ChaCha8(sha256(master_seed || k))`, so any CSV row can be replayed alone
//! and the output does not depend on the thread count.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::betti::ORACLE_GENERATOR_CAP;
use crate::checks::{run_checks, BoundReport, CheckName};
use crate::error::{Error, Result};
use crate::hilbert;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Bound, BoundVector, Monomial};
use crate::simplicial::SimplicialComplex;
use crate::stability::{
    a_stable_closure, squarefree_strongly_stable_closure, strongly_stable_closure,
};

/// Rejection attempts per instance before the last draw is kept regardless
/// of its generator count.
const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Stable,
    AStable,
    SqfreeStronglyStable,
    RandomMonomial,
    RandomComplex,
    BorelCodim2,
    CompleteIntersection,
    CmBorel,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Stable,
        Family::AStable,
        Family::SqfreeStronglyStable,
        Family::RandomMonomial,
        Family::RandomComplex,
        Family::BorelCodim2,
        Family::CompleteIntersection,
        Family::CmBorel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Stable => "stable",
            Family::AStable => "a-stable",
            Family::SqfreeStronglyStable => "sqfree-strongly-stable",
            Family::RandomMonomial => "random-monomial",
            Family::RandomComplex => "random-complex",
            Family::BorelCodim2 => "borel-codim2",
            Family::CompleteIntersection => "complete-intersection",
            Family::CmBorel => "cm-borel",
        }
    }

    /// Checks run when the configuration names none.
    pub fn default_checks(self) -> Vec<CheckName> {
        use CheckName::*;
        let mut checks = vec![C2, C1, Hm, Weak, Main];
        match self {
            Family::Stable | Family::AStable => checks.extend([Cwl, Astable]),
            Family::SqfreeStronglyStable => checks.extend([Cwl, Astable, Dual]),
            Family::RandomComplex => checks.push(Dual),
            Family::BorelCodim2 => checks.push(Reduce),
            Family::RandomMonomial | Family::CompleteIntersection | Family::CmBorel => {}
        }
        checks
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown family '{s}'")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub family: Family,
    pub n: usize,
    pub max_degree: u32,
    pub count: usize,
    pub master_seed: u64,
    /// Empty means [`Family::default_checks`].
    pub checks: Vec<CheckName>,
    /// For `a-stable`: a fixed bound vector. `None` draws one per instance.
    pub bound: Option<BoundVector>,
    /// `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl CampaignConfig {
    pub fn new(family: Family, n: usize, max_degree: u32, count: usize, master_seed: u64) -> Self {
        CampaignConfig {
            family,
            n,
            max_degree,
            count,
            master_seed,
            checks: Vec::new(),
            bound: None,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::input("count must be at least 1"));
        }
        if self.n == 0 {
            return Err(Error::input("n must be at least 1"));
        }
        if self.max_degree == 0 {
            return Err(Error::input("max degree must be at least 1"));
        }
        let limit = match self.family {
            Family::RandomComplex => 12,
            _ => 10,
        };
        if self.n > limit {
            return Err(Error::input(format!(
                "n = {} is beyond the desk-scale limit {limit} for {}",
                self.n, self.family
            )));
        }
        if let Some(a) = &self.bound {
            a.check_len(self.n)?;
        }
        if self.threads == Some(0) {
            return Err(Error::input("threads must be at least 1"));
        }
        Ok(())
    }

    pub fn effective_checks(&self) -> Vec<CheckName> {
        if self.checks.is_empty() {
            self.family.default_checks()
        } else {
            self.checks.clone()
        }
    }
}

/// First eight bytes (little endian) of `sha256(master_seed || index)`.
pub fn instance_seed(master_seed: u64, index: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update(index.to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub index: usize,
    pub seed: u64,
    pub ideal: MonomialIdeal,
    /// Set for the a-stable families.
    pub bound: Option<BoundVector>,
    /// Set for `random-complex`.
    pub complex: Option<SimplicialComplex>,
}

/// Uniform composition of `d` into `n` parts (stars and bars).
fn stars_and_bars(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Vec<u32> {
    let slots = d as usize + n - 1;
    let mut bars: Vec<usize> = sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut exps = Vec::with_capacity(n);
    let mut prev = 0usize;
    for (k, &b) in bars.iter().enumerate() {
        exps.push((b - prev - if k == 0 { 0 } else { 1 }) as u32);
        prev = b;
    }
    let last = if n == 1 { d as usize } else { slots - prev - 1 };
    exps.push(last as u32);
    exps
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    Monomial::new(stars_and_bars(rng, n, d))
}

/// A monomial of degree at most `d` with `u_i < a_i`.
fn random_bounded_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32, a: &BoundVector) -> Monomial {
    for _ in 0..16 {
        let m = random_monomial(rng, n, d);
        if a.bounds(&m) {
            return m;
        }
    }
    let mut exps = vec![0u32; n];
    for _ in 0..d {
        let open: Vec<usize> = (0..n)
            .filter(|&i| a.get(i + 1).admits(exps[i] + 1))
            .collect();
        match open.choose(rng) {
            Some(&i) => exps[i] += 1,
            None => break,
        }
    }
    Monomial::new(exps)
}

fn random_squarefree(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Monomial {
    let picked = sample(rng, n, d.clamp(1, n)).into_vec();
    Monomial::squarefree(n, picked.into_iter().map(|i| i + 1))
}

fn random_bound_vector(rng: &mut ChaCha8Rng, n: usize) -> BoundVector {
    let bounds = match rng.gen_range(0..3) {
        0 => vec![Bound::Infinite; n],
        1 => vec![Bound::Finite(2); n],
        _ => (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => Bound::Infinite,
                k => Bound::Finite(k + 1),
            })
            .collect(),
    };
    BoundVector::new(bounds).expect("entries are at least 2")
}

fn degree(rng: &mut ChaCha8Rng, max_degree: u32) -> u32 {
    rng.gen_range(1..=max_degree)
}

type Drawn = (
    MonomialIdeal,
    Option<BoundVector>,
    Option<SimplicialComplex>,
);

fn draw(cfg: &CampaignConfig, rng: &mut ChaCha8Rng) -> Result<Option<Drawn>> {
    let n = cfg.n;
    let dmax = cfg.max_degree;
    Ok(match cfg.family {
        Family::Stable => {
            let k = rng.gen_range(1..=2);
            let seeds: Vec<Monomial> = (0..k)
                .map(|_| {
                    let d = degree(rng, dmax);
                    random_monomial(rng, n, d)
                })
                .collect();
            Some((
                a_stable_closure(n, seeds, &BoundVector::infinite(n))?,
                None,
                None,
            ))
        }
        Family::AStable => {
            let a = match &cfg.bound {
                Some(a) => a.clone(),
                None => random_bound_vector(rng, n),
            };
            let k = rng.gen_range(1..=2);
            let seeds: Vec<Monomial> = (0..k)
                .map(|_| {
                    let d = degree(rng, dmax);
                    random_bounded_monomial(rng, n, d, &a)
                })
                .filter(|m| !m.is_one())
                .collect();
            if seeds.is_empty() {
                return Ok(None);
            }
            Some((a_stable_closure(n, seeds, &a)?, Some(a), None))
        }
        Family::SqfreeStronglyStable => {
            let k = rng.gen_range(1..=3);
            let top = (dmax as usize).min(n);
            let seeds: Vec<Monomial> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=top);
                    random_squarefree(rng, n, d)
                })
                .collect();
            let ideal = squarefree_strongly_stable_closure(n, seeds)?;
            Some((ideal, Some(BoundVector::squarefree(n)), None))
        }
        Family::RandomMonomial => {
            let k = rng.gen_range(1..=8);
            let gens: Vec<Monomial> = (0..k)
                .map(|_| {
                    let d = degree(rng, dmax);
                    random_monomial(rng, n, d)
                })
                .collect();
            Some((MonomialIdeal::new(n, gens)?, None, None))
        }
        Family::RandomComplex => {
            let k = rng.gen_range(1..=4);
            let facets: Vec<u64> = (0..k)
                .map(|_| {
                    let size = rng.gen_range(0..n);
                    sample(rng, n, size)
                        .into_iter()
                        .fold(0u64, |m, v| m | (1 << v))
                })
                .collect();
            let cx = SimplicialComplex::from_masks(n, facets)?;
            if !cx.is_proper() {
                return Ok(None);
            }
            Some((cx.stanley_reisner_ideal(), None, Some(cx)))
        }
        Family::BorelCodim2 => {
            if n < 2 {
                return Err(Error::input("borel-codim2 needs n >= 2"));
            }
            let mut seeds = vec![Monomial::var_power(n, 2, degree(rng, dmax))];
            for _ in 0..rng.gen_range(0..=2) {
                let d = degree(rng, dmax);
                let m = random_monomial(rng, n, d);
                if m.exponent(1) + m.exponent(2) >= 1 {
                    seeds.push(m);
                }
            }
            let ideal = strongly_stable_closure(n, seeds)?;
            if hilbert::summarize(&ideal)?.codim != 2 {
                return Ok(None);
            }
            Some((ideal, None, None))
        }
        Family::CompleteIntersection => {
            let c = rng.gen_range(1..=n);
            let mut vars: Vec<usize> = (0..n).collect();
            vars.shuffle(rng);
            let mut supports: Vec<Vec<usize>> = vars[..c].iter().map(|&v| vec![v]).collect();
            for &v in &vars[c..] {
                let slot = rng.gen_range(0..=c);
                if slot < c {
                    supports[slot].push(v);
                }
            }
            let gens: Vec<Monomial> = supports
                .iter()
                .map(|s| {
                    let lo = s.len() as u32;
                    let d = rng.gen_range(lo..=dmax.max(lo));
                    let extra = stars_and_bars(rng, s.len(), d - lo);
                    let mut exps = vec![0u32; n];
                    for (&v, e) in s.iter().zip(extra) {
                        exps[v] = e + 1;
                    }
                    Monomial::new(exps)
                })
                .collect();
            Some((MonomialIdeal::new(n, gens)?, None, None))
        }
        Family::CmBorel => {
            let c = rng.gen_range(1..=n);
            let lift = |m: Monomial| {
                let mut exps = m.exps().to_vec();
                exps.resize(n, 0);
                Monomial::new(exps)
            };
            let mut seeds = vec![lift(Monomial::var_power(c, c, degree(rng, dmax)))];
            for _ in 0..rng.gen_range(0..=2) {
                let d = degree(rng, dmax);
                seeds.push(lift(random_monomial(rng, c, d)));
            }
            Some((strongly_stable_closure(n, seeds)?, None, None))
        }
    })
}

/// Draws instance `index`, retrying (deterministically) until the ideal
/// fits under the oracle generator cap.
pub fn generate_instance(cfg: &CampaignConfig, index: usize) -> Result<Instance> {
    let seed = instance_seed(cfg.master_seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        if let Some(found) = draw(cfg, &mut rng)? {
            let fits = found.0.num_gens() <= ORACLE_GENERATOR_CAP && !found.0.is_unit();
            last = Some(found);
            if fits {
                break;
            }
        }
    }
    let (ideal, bound, complex) = last.ok_or_else(|| {
        Error::input(format!(
            "family {} produced no instance for n = {}",
            cfg.family, cfg.n
        ))
    })?;
    Ok(Instance {
        index,
        seed,
        ideal,
        bound,
        complex,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceOutcome {
    pub instance: Instance,
    pub report: Option<BoundReport>,
    /// Set when the instance could not be analysed at all.
    pub error: Option<String>,
}

impl InstanceOutcome {
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.report.as_ref().is_some_and(BoundReport::any_fail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignResult {
    pub family: Family,
    pub outcomes: Vec<InstanceOutcome>,
}

impl CampaignResult {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.failed()).count()
    }

    /// `0` when nothing failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failures() > 0)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for o in &self.outcomes {
            w.write_record(csv_row(o))?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

pub const CSV_HEADER: [&str; 14] = [
    "instance_seed",
    "n",
    "num_gens",
    "max_deg",
    "e",
    "codim",
    "pdim",
    "reg",
    "M_vector",
    "bound_num",
    "bound_den",
    "tightness_num",
    "tightness_den",
    "verdicts",
];

fn csv_row(o: &InstanceOutcome) -> Vec<String> {
    let ideal = &o.instance.ideal;
    let mut row = vec![
        o.instance.seed.to_string(),
        ideal.nvars().to_string(),
        ideal.num_gens().to_string(),
        ideal.max_degree().unwrap_or(0).to_string(),
    ];
    let inv = o.report.as_ref().and_then(|r| r.invariants.as_ref());
    match inv {
        Some(inv) => {
            let (tn, td) = match &inv.tightness {
                Some(t) => (t.numer().to_string(), t.denom().to_string()),
                None => (String::new(), String::new()),
            };
            row.extend([
                inv.e.to_string(),
                inv.codim.to_string(),
                inv.pdim.to_string(),
                inv.reg.to_string(),
                inv.max_shifts
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
                inv.upper_bound.numer().to_string(),
                inv.upper_bound.denom().to_string(),
                tn,
                td,
            ]);
        }
        None => row.extend(std::iter::repeat_n(String::new(), 9)),
    }
    let verdicts = match (&o.report, &o.error) {
        (_, Some(e)) => format!("error={e}"),
        (Some(r), None) => r
            .verdicts
            .iter()
            .map(|(c, v)| format!("{c}={}", v.label()))
            .collect::<Vec<_>>()
            .join(";"),
        (None, None) => String::new(),
    };
    row.push(verdicts);
    row
}

fn run_one(cfg: &CampaignConfig, checks: &[CheckName], index: usize) -> Result<InstanceOutcome> {
    let instance = generate_instance(cfg, index)?;
    let (report, error) = match run_checks(&instance.ideal, checks, instance.bound.as_ref()) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(InstanceOutcome {
        instance,
        report,
        error,
    })
}

/// Generates and checks every instance. Failing checks never abort the run.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignResult> {
    cfg.validate()?;
    let checks = cfg.effective_checks();
    let work = || -> Result<Vec<InstanceOutcome>> {
        (0..cfg.count)
            .into_par_iter()
            .map(|k| run_one(cfg, &checks, k))
            .collect()
    };
    let outcomes = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::input(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    Ok(CampaignResult {
        family: cfg.family,
        outcomes,
    })
}
