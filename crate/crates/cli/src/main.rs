//! Experiment runner and report emitter for the cone-bergman library.
//!
//! Every subcommand selects a registered experiment kind (or the cone-info
//! utility), runs it with a seeded, schema-checked configuration, and writes
//! `<out>/<kind>.csv` plus `<out>/summary.json`. Identical config and seed
//! give byte-identical reports.

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use cone_bergman::cone::gamma::gamma_cone;
use cone_bergman::experiment::{run_experiment, ExperimentConfig, ExperimentReport, RunContext};
use cone_bergman::{from_spec, ConeSpec};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "cone-bergman",
    about = "Threshold scans, property sweeps, reconstruction curves, and regression reports for weighted Bergman-space machinery on homogeneous cones"
)]
struct Cli {
    /// JSON experiment config; defaults are built in per subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for <kind>.csv and summary.json
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,
    /// Seed for Monte-Carlo kinds
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Multiplies every tolerance (loosen > 1, tighten < 1)
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print structure data of a cone spec ({"kind":"lorentz","dim":3}, ...)
    ConeInfo {
        /// JSON cone spec; default is the 3-dimensional Lorentz cone
        #[arg(long)]
        cone: Option<String>,
    },
    /// Classical-gamma and Laplace-constancy checks
    Gamma,
    /// Half-plane positive-projector threshold scan
    ProjectorNorm,
    /// Cone-operator vs positive-projector verdict matrix
    PositiveEquivalence,
    /// Lattice reconstruction curves and synthesis-norm scans
    AtomicRecon,
    /// Boundary limits of the spectral extension
    Boundary,
    /// Half-space/half-plane pure-norm transference
    Transference,
    /// Branch oscillation and modulus ratio sweeps
    Props7,
    /// Duality pairing constancy
    Duality,
}

fn kind_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::ConeInfo { .. } => "cone-info",
        Command::Gamma => "gamma-identity",
        Command::ProjectorNorm => "projector-threshold",
        Command::PositiveEquivalence => "positive-equivalence",
        Command::AtomicRecon => "atomic-reconstruction",
        Command::Boundary => "boundary-limit",
        Command::Transference => "transference",
        Command::Props7 => "section7-properties",
        Command::Duality => "duality-constancy",
    }
}

fn write_report(out: &Path, report: &ExperimentReport) -> anyhow::Result<()> {
    fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    let csv_path = out.join(format!("{}.csv", report.kind));
    fs::write(&csv_path, report.to_csv())?;
    let summary_path = out.join("summary.json");
    let summary = serde_json::to_string_pretty(&report.summary_json())?;
    fs::write(&summary_path, summary + "\n")?;
    println!(
        "{}: {} cases, {} failures -> {}",
        report.kind,
        report.rows.len(),
        report.rows.iter().filter(|r| !r.pass).count(),
        csv_path.display()
    );
    Ok(())
}

fn cone_info(spec_text: Option<&str>) -> anyhow::Result<()> {
    let spec: ConeSpec = match spec_text {
        Some(t) => serde_json::from_str(t).context("parsing cone spec")?,
        None => ConeSpec::Lorentz { dim: 3 },
    };
    let cone = from_spec(&spec)?;
    println!("cone: {}", cone.name());
    println!("rank: {}", cone.rank());
    println!("ambient dimension: {}", cone.ambient_dim());
    println!("m  = {:?}", cone.m_vec().as_slice());
    println!("m' = {:?}", cone.m_prime_vec().as_slice());
    println!("d  = {:?}", cone.d_vec().as_slice());
    println!("base point: {:?}", cone.e_omega());
    println!(
        "polynomial basis: {:?}",
        cone.n_basis()
            .iter()
            .map(|b| b.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    let s: Vec<f64> = cone
        .m_vec()
        .as_slice()
        .iter()
        .map(|m| m / 2.0 + 1.5)
        .collect();
    match gamma_cone(&cone, &s.clone().into()) {
        Ok(g) => println!("gamma at s = {s:?}: {g:.10e}"),
        Err(e) => println!("gamma at s = {s:?}: {e}"),
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("CONE_BERGMAN_THREADS") {
        let n: usize = threads
            .parse()
            .context("CONE_BERGMAN_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    if let Command::ConeInfo { cone } = &cli.command {
        return cone_info(cone.as_deref());
    }
    let kind = kind_of(&cli.command);
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            if cfg.kind != kind {
                bail!(
                    "config error: kind: config is for '{}' but the subcommand runs '{kind}'",
                    cfg.kind
                );
            }
            cfg
        }
        None => ExperimentConfig::for_kind(kind),
    };
    if cfg.seed.is_none() {
        cfg.seed = Some(cli.seed);
    }
    let ctx = RunContext {
        seed: cli.seed,
        tolerance_scale: cli.tolerance_scale,
    };
    let report = run_experiment(&cfg, &ctx)?;
    write_report(&cli.out, &report)?;
    if !report.passed {
        std::process::exit(1);
    }
    Ok(())
}
