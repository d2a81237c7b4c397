use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use multbound_core::betti::betti_table;
use multbound_core::campaign::{run_campaign, CampaignConfig, Family};
use multbound_core::checks::{check_dual_identities, run_checks, CheckName, Verdict};
use multbound_core::grid::betti_grid;
use multbound_core::koszul::{reduction_report, ReductionOutcome};
use multbound_core::{BoundVector, MonomialIdeal, SimplicialComplex};

/// Exact Betti tables, multiplicities and bound checks for monomial ideals.
#[derive(Parser)]
#[command(name = "multbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run bound checks on one ideal and print the report as JSON.
    Check {
        /// `{"n": 2, "generators": [[2,0],[1,1],[0,2]]}`
        ideal: PathBuf,
        /// Comma-separated: c2,c1,hm,weak,main,cwl,dual,astable,reduce.
        #[arg(long, default_value = "c2,c1,hm,weak,main")]
        checks: String,
        /// Print the Betti diagram of S/I before the report.
        #[arg(long)]
        betti_grid: bool,
        /// Bound vector for a-stable ideals, e.g. `2,3,inf`.
        #[arg(long)]
        bound: Option<BoundVector>,
    },
    /// Check the duality identities of a simplicial complex.
    Dual {
        /// `{"n": 3, "facets": [[1,3],[2,3]]}`
        complex: PathBuf,
    },
    /// Kill x_n, ..., x_3 and compare S/I with its Artinian reduction.
    Reduce { ideal: PathBuf },
    /// Generate seeded instances, check them, and write one CSV row each.
    Campaign(CampaignArgs),
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_deg: u32,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Defaults depend on the family.
    #[arg(long)]
    checks: Option<String>,
    /// Fixed bound vector for the a-stable family.
    #[arg(long)]
    bound: Option<BoundVector>,
    #[arg(long)]
    threads: Option<usize>,
}

/// Errors that are the caller's fault exit with 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn read_ideal(path: &Path) -> Result<MonomialIdeal, InputError> {
    let text = read(path)?;
    Ok(MonomialIdeal::from_json(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn pass_code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn check(
    path: &Path,
    checks: &str,
    grid: bool,
    bound: Option<BoundVector>,
) -> Result<u8, InputError> {
    let ideal = read_ideal(path)?;
    let checks = CheckName::parse_list(checks)?;
    if grid {
        let (table, _) = betti_table(&ideal, bound.as_ref())?;
        print!("{}", betti_grid(&table));
    }
    let report = run_checks(&ideal, &checks, bound.as_ref())?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    for (name, v) in &report.verdicts {
        if v.is_fail() {
            eprintln!("FAIL {name} on {ideal}");
        }
    }
    Ok(pass_code(!report.any_fail()))
}

fn dual(path: &Path) -> Result<u8, InputError> {
    let text = read(path)?;
    let cx = SimplicialComplex::from_json(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    let report = check_dual_identities(&cx)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(pass_code(report.verdict != Verdict::Fail))
}

fn reduce(path: &Path) -> Result<u8, InputError> {
    let ideal = read_ideal(path)?;
    let outcome = reduction_report(&ideal)?;
    println!("{}", serde_json::to_string_pretty(&outcome)?);
    Ok(match &outcome {
        ReductionOutcome::Applicable(r) => pass_code(r.checks.all()),
        ReductionOutcome::Inapplicable { .. } => 0,
    })
}

fn campaign(args: CampaignArgs) -> Result<u8, InputError> {
    let mut cfg = CampaignConfig::new(args.family, args.n, args.max_deg, args.count, args.seed);
    if let Some(c) = &args.checks {
        cfg.checks = CheckName::parse_list(c)?;
    }
    cfg.bound = args.bound;
    cfg.threads = args.threads;
    let result = run_campaign(&cfg)?;
    let file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    result.write_csv(BufWriter::new(file))?;

    let failures = result.failures();
    eprintln!(
        "{}: {} instances, {} failing, report in {}",
        cfg.family,
        result.outcomes.len(),
        failures,
        args.out.display()
    );
    for o in result.outcomes.iter().filter(|o| o.failed()) {
        eprintln!(
            "COUNTEREXAMPLE? seed {} ideal {}",
            o.instance.seed, o.instance.ideal
        );
    }
    Ok(result.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check {
            ideal,
            checks,
            betti_grid,
            bound,
        } => check(&ideal, &checks, betti_grid, bound),
        Command::Dual { complex } => dual(&complex),
        Command::Reduce { ideal } => reduce(&ideal),
        Command::Campaign(args) => campaign(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
