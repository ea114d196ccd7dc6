//! Manifest-driven verification runner.
//!
//! Exit codes: 0 when every check passes, 1 when at least one check fails,
//! 2 for configuration problems (unreadable or invalid manifest, unknown
//! scene or suite names, bad parameters).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Deserialize;

use lightlike_core::runner::{run, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "verify", about = "Run hypersurface verification suites from a manifest")]
struct Args {
    /// Path to the JSON manifest.
    manifest: PathBuf,
    /// Override the differential-residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Override the number of sampled evaluation points.
    #[arg(long)]
    points: Option<usize>,
    /// Override the sampler seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Restrict to the named suites (repeatable).
    #[arg(long = "suite")]
    suite: Vec<String>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Manifest {
    scene: String,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    suites: Option<Vec<String>>,
    #[serde(default)]
    tolerances: Option<Tolerances>,
    #[serde(default)]
    sampler: Option<Sampler>,
    #[serde(default)]
    report: Option<PathBuf>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Tolerances {
    #[serde(default)]
    algebraic: Option<f64>,
    #[serde(default)]
    differential: Option<f64>,
    #[serde(default)]
    ricci: Option<f64>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Sampler {
    #[serde(default)]
    points: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        bail!("tolerance '{name}' must be a positive finite number, got {v}")
    }
}

fn build_config(args: &Args) -> Result<(RunConfig, Option<PathBuf>)> {
    let text = std::fs::read_to_string(&args.manifest)
        .with_context(|| format!("reading manifest {}", args.manifest.display()))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .with_context(|| format!("parsing manifest {}", args.manifest.display()))?;
    let mut cfg = RunConfig {
        scene: manifest.scene,
        ..RunConfig::default()
    };
    if let Some(n) = manifest.n {
        cfg.n = n;
    }
    if let Some(suites) = manifest.suites {
        cfg.suites = suites;
    }
    if let Some(t) = manifest.tolerances {
        if let Some(v) = t.algebraic {
            cfg.tol_alg = positive("algebraic", v)?;
        }
        if let Some(v) = t.differential {
            cfg.tol_diff = positive("differential", v)?;
        }
        if let Some(v) = t.ricci {
            cfg.tol_ricci = positive("ricci", v)?;
        }
    }
    if let Some(s) = manifest.sampler {
        if let Some(p) = s.points {
            cfg.points = p;
        }
        if let Some(seed) = s.seed {
            cfg.seed = seed;
        }
    }
    // Command-line overrides win over the manifest.
    if let Some(v) = args.tol {
        cfg.tol_diff = positive("differential", v)?;
    }
    if let Some(p) = args.points {
        cfg.points = p;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if !args.suite.is_empty() {
        cfg.suites = args.suite.clone();
    }
    if cfg.points == 0 {
        bail!("point count must be positive");
    }
    let report = args.report.clone().or(manifest.report);
    Ok((cfg, report))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (cfg, report_path) = match build_config(&args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("configuration error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let started = Instant::now();
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = started.elapsed();
    println!(
        "scene {} ({} ambient dims, {} mode, seed {}, {} points)",
        report.fingerprint.scene,
        report.fingerprint.ambient_dim,
        report.fingerprint.mode,
        report.fingerprint.seed,
        report.fingerprint.points
    );
    for check in &report.checks {
        println!("{check}");
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    // Wall time goes to stdout only; the JSON report stays byte-identical
    // across runs with identical inputs.
    println!(
        "{} checks, {} failed, wall time {:.3}s",
        report.checks.len(),
        failed,
        elapsed.as_secs_f64()
    );
    if let Some(path) = report_path {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("configuration error: writing report {}: {e}", path.display());
            return ExitCode::from(2);
        }
        println!("report written to {}", path.display());
    }
    if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
