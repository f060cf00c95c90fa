//! `verify` — batch front end over the verification campaigns.
//!
//! Exit codes: 0 when every check passes (inconclusive records do not
//! count), 1 when any check fails, 2 on configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ahv_core::campaign::{run, CampaignConfig, CampaignKind, Status, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "verify")]
#[command(about = "verification campaigns over the affine-homogeneity catalog")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for every deterministic draw (env AHV_SEED, then 42).
    #[arg(long)]
    seed: Option<u64>,

    /// Sample count per check.
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// Parameter range as `lo,hi`.
    #[arg(long, default_value = "-2,2", value_parser = parse_range)]
    range: (f64, f64),

    /// Family selector (repeatable), e.g. `--family 3.1`.
    #[arg(long = "family")]
    families: Vec<String>,

    /// Surface selector (repeatable), e.g. `--surface 2.6`.
    #[arg(long = "surface")]
    surfaces: Vec<String>,

    /// Theorem selector (repeatable), e.g. `--theorem 4.1`.
    #[arg(long = "theorem")]
    theorems: Vec<String>,

    /// Closure tolerance override.
    #[arg(long = "tol-closure")]
    tol_closure: Option<f64>,

    /// Tangency tolerance override (closed-form parameters).
    #[arg(long = "tol-tangency")]
    tol_tangency: Option<f64>,

    /// ODE residual tolerance override.
    #[arg(long = "tol-ode")]
    tol_ode: Option<f64>,

    /// Subspace residual tolerance override.
    #[arg(long = "tol-subspace")]
    tol_subspace: Option<f64>,

    /// Fit residual tolerance override.
    #[arg(long = "tol-fit")]
    tol_fit: Option<f64>,

    /// Write the canonical report here (stdout otherwise). Timings go to a
    /// `.timing.json` sidecar next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `lo,hi`".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    let order_ok = lo < hi;
    if !order_ok {
        return Err(format!("empty range [{lo}, {hi}]"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bracket closure of every catalog family over seeded draws.
    Closure(Common),
    /// Template structure constraints on the third-row entries.
    Constraints(Common),
    /// Similarity reductions, eigenvalue anchors, similarity searches.
    Reductions(Common),
    /// Field tangency, transitivity and surface equivalences per theorem.
    Tangency(Common),
    /// The (eps1, eps2) type invariant across the surface catalog.
    Type(Common),
    /// Levi signatures, including the degenerate boundary cases.
    Levi(Common),
    /// Residuals of the integration ODE/PDE systems.
    Ode(Common),
    /// Parameter fits where the algebra-surface match is implicit.
    Fit(Common),
    /// The quadratic closure system: counts, residuals, recovery.
    ClosureSystem(Common),
    /// Every campaign.
    All(Common),
}

impl Command {
    fn split(self) -> (Vec<CampaignKind>, Common) {
        match self {
            Command::Closure(c) => (vec![CampaignKind::Closure], c),
            Command::Constraints(c) => (vec![CampaignKind::Constraints], c),
            Command::Reductions(c) => (vec![CampaignKind::Reductions], c),
            Command::Tangency(c) => (vec![CampaignKind::Tangency], c),
            Command::Type(c) => (vec![CampaignKind::Type], c),
            Command::Levi(c) => (vec![CampaignKind::Levi], c),
            Command::Ode(c) => (vec![CampaignKind::Ode], c),
            Command::Fit(c) => (vec![CampaignKind::Fit], c),
            Command::ClosureSystem(c) => (vec![CampaignKind::ClosureSystem], c),
            Command::All(c) => (CampaignKind::ALL.to_vec(), c),
        }
    }
}

fn build_config(common: &Common) -> Result<CampaignConfig, String> {
    if common.samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    let seed = match common.seed {
        Some(s) => s,
        None => match std::env::var("AHV_SEED") {
            Ok(v) => v
                .parse()
                .map_err(|e| format!("AHV_SEED is not an unsigned integer: {e}"))?,
            Err(_) => 42,
        },
    };
    let mut tol = Tolerances::default();
    if let Some(v) = common.tol_closure {
        tol.closure = v;
    }
    if let Some(v) = common.tol_tangency {
        tol.tangency = v;
    }
    if let Some(v) = common.tol_ode {
        tol.ode = v;
    }
    if let Some(v) = common.tol_subspace {
        tol.subspace = v;
    }
    if let Some(v) = common.tol_fit {
        tol.fit = v;
    }
    Ok(CampaignConfig {
        seed,
        samples: common.samples,
        range: common.range,
        tolerances: tol,
        families: common.families.clone(),
        surfaces: common.surfaces.clone(),
        theorems: common.theorems.clone(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kinds, common) = cli.command.split();
    let config = match build_config(&common) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("config error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (report, timings) = run(&config, &kinds);

    let canonical = report.canonical_json();
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &canonical) {
            eprintln!("cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
        let timing_path = path.with_extension("timing.json");
        let timing_json = serde_json::to_string_pretty(
            &timings
                .iter()
                .map(|(k, ms)| (k.clone(), *ms))
                .collect::<Vec<_>>(),
        )
        .expect("timings serialize");
        if let Err(e) = std::fs::write(&timing_path, timing_json) {
            eprintln!("cannot write timings to {}: {e}", timing_path.display());
        }
    } else {
        print!("{canonical}");
    }

    for check in &report.checks {
        if check.status == Status::Fail {
            eprintln!("FAIL {}", check.id);
        }
    }
    eprintln!(
        "{} checks: {} passed, {} failed, {} inconclusive",
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.inconclusive
    );

    if report.summary.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
