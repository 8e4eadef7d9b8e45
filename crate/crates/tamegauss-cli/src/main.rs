use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tamegauss::suite::{run_suite, Config, OutputFormat, SuiteName, CONFIG_ENV};

#[derive(Parser, Debug)]
#[command(name = "tamegauss", version, about = "Run the tamegauss verification suites and write a report")]
struct Cli {
    /// TOML config file; flags below override it.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Gauss sums: classical, modulus, twist, Brauer, conductor and Galois checks.
    Gauss(GaussArgs),
    /// Tower values: Hom^W, multiplicativity, restriction and Galois checks.
    Tower(TowerArgs),
    /// Normal integral bases, nu units, the log square and tame lattices.
    Basis(BasisArgs),
    /// Reduced norms, Det(g) and the correction element.
    Krings(KringsArgs),
    /// Every suite.
    All,
}

#[derive(Args, Debug)]
struct GaussArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    f: Option<u32>,
    /// Keep only families with this ramification index.
    #[arg(long)]
    e: Option<u64>,
    #[arg(long)]
    conductor_max: Option<u32>,
    #[arg(long, value_parser = ["classical", "modulus", "twist", "unit_independence", "galois", "brauer", "conductor", "nonabelian_twist"])]
    check: Vec<String>,
}

#[derive(Args, Debug)]
struct TowerArgs {
    #[arg(long, value_parser = ["homw", "res", "galois", "multiplicative"])]
    check: Vec<String>,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    f: Option<u32>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, value_parser = ["nib", "nu", "log", "lattice"])]
    check: Vec<String>,
}

#[derive(Args, Debug)]
struct KringsArgs {
    #[arg(long)]
    layer_depth: Option<u32>,
    #[arg(long, value_parser = ["nrd", "det", "correction"])]
    check: Vec<String>,
}

fn restrict_prime(cfg: &mut Config, p: Option<u64>) {
    if let Some(p) = p {
        cfg.primes = vec![p];
        cfg.families.retain(|fam| fam.p == p);
    }
}

fn configure(cli: &Cli) -> Result<(SuiteName, Config)> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if let Some(o) = &cli.out {
        cfg.output.path = Some(o.clone());
    }
    if let Some(f) = cli.format {
        cfg.output.format = match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        };
    }
    let name = match &cli.cmd {
        Cmd::Gauss(a) => {
            restrict_prime(&mut cfg, a.p);
            if let Some(f) = a.f {
                cfg.residue_degrees = vec![f];
            }
            if let Some(e) = a.e {
                cfg.families.retain(|fam| fam.e == e);
            }
            if let Some(m) = a.conductor_max {
                cfg.conductor_max = m;
            }
            if !a.check.is_empty() {
                cfg.gauss.checks = a.check.clone();
            }
            SuiteName::Gauss
        }
        Cmd::Tower(a) => {
            if !a.check.is_empty() {
                cfg.tower.checks = a.check.clone();
            }
            SuiteName::Tower
        }
        Cmd::Basis(a) => {
            restrict_prime(&mut cfg, a.p);
            if let Some(f) = a.f {
                cfg.residue_degrees = vec![f];
            }
            if let Some(d) = a.depth {
                cfg.basis.depth = d;
                cfg.basis.nu_depth = cfg.basis.nu_depth.min(d);
                cfg.basis.log_depth = cfg.basis.log_depth.min(d);
            }
            if let Some(n) = a.precision {
                cfg.precision = n;
            }
            if !a.check.is_empty() {
                cfg.basis.checks = a.check.clone();
            }
            SuiteName::Basis
        }
        Cmd::Krings(a) => {
            if let Some(d) = a.layer_depth {
                cfg.krings.layer_depth = d;
                cfg.krings.nrd_depth = cfg.krings.nrd_depth.min(d);
            }
            if !a.check.is_empty() {
                cfg.krings.checks = a.check.clone();
            }
            SuiteName::Krings
        }
        Cmd::All => SuiteName::All,
    };
    cfg.validate()?;
    Ok((name, cfg))
}

fn run(cli: &Cli) -> Result<bool> {
    let (name, cfg) = configure(cli)?;
    let report = run_suite(name, &cfg)?;
    let text = match cfg.output.format {
        OutputFormat::Json => report.to_json()?,
        OutputFormat::Csv => report.to_csv()?,
    };
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let s = &report.summary;
    eprintln!("{}: {} records, {} passed, {} failed", name.as_str(), s.total, s.passed, s.failed);
    for (check, c) in &s.checks {
        if c.failed > 0 {
            eprintln!("  FAIL {check}: {} of {}", c.failed, c.passed + c.failed);
        }
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
