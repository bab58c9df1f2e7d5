//! `g2check`: batch driver for the verification suites.
//!
//! Exit status: 0 if every check passes, 1 if one fails, 2 on configuration
//! or construction errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nearly_g2::peterweyl::{
    build_blocks, bundle_spectrum, instability_certificate, operator_identity_suite, spectral_report, theorem_check,
    Block, Bundle, SpectralReport, Theorem, KERNEL_TOL,
};
use nearly_g2::{clifford, g2algebra, homogeneous, CheckReport, Rational, Status};
use serde_json::{json, Value};

const REPORT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "g2check", version, about = "Verification suites for the nearly parallel G2-structure on S^7")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the random identity inputs.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Random inputs per identity.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Largest `a + b + c` of the Spin(7) weights visited.
    #[arg(long, global = true, default_value_t = 3)]
    max_level: u32,
    /// Tolerance for floating-point residuals.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached irreps.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Pointwise G2 and Clifford identities.
    Algebra,
    /// Curvature of the homogeneous model.
    Curvature,
    /// Spectrum of the natural operator on one bundle.
    Spectra {
        #[arg(long)]
        bundle: Bundle,
    },
    /// Blockwise dimension equalities of a main theorem.
    Theorem {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
    },
    /// The instability certificate.
    Instability,
    /// Every suite.
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Backend {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Which {
    A,
    B,
}

impl Which {
    fn theorem(self) -> Theorem {
        match self {
            Which::A => Theorem::A,
            Which::B => Theorem::B,
        }
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("g2check: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.trials == 0 {
        return fail("--trials must be at least 1");
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return fail("--tol must be positive");
    }
    match run(&cli) {
        Ok((value, code)) => {
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&value).expect("report serializes") + "\n";
                if let Err(e) = std::fs::write(path, text) {
                    return fail(format!("{}: {e}", path.display()));
                }
            }
            ExitCode::from(code)
        }
        Err(e) => fail(e),
    }
}

fn config(cli: &Cli) -> Value {
    json!({
        "seed": cli.seed,
        "trials": cli.trials,
        "maxLevel": cli.max_level,
        "tolerance": cli.tol,
        "backend": format!("{:?}", cli.backend).to_lowercase(),
    })
}

fn algebra(cli: &Cli) -> CheckReport {
    let mut r = CheckReport::new();
    match cli.backend {
        Backend::Exact => {
            r.extend(g2algebra::identity_suite::<Rational>(cli.seed, cli.trials, cli.tol));
            r.extend(g2algebra::invariant_suite::<Rational>(cli.seed, cli.trials, cli.tol));
            r.extend(clifford::clifford_suite::<Rational>(cli.seed, cli.trials, cli.tol));
        }
        Backend::Float => {
            r.extend(g2algebra::identity_suite::<f64>(cli.seed, cli.trials, cli.tol));
            r.extend(g2algebra::invariant_suite::<f64>(cli.seed, cli.trials, cli.tol));
            r.extend(clifford::clifford_suite::<f64>(cli.seed, cli.trials, cli.tol));
        }
    }
    r
}

fn curvature(cli: &Cli) -> CheckReport {
    match cli.backend {
        Backend::Exact => homogeneous::curvature_suite::<Rational>(cli.tol),
        Backend::Float => homogeneous::curvature_suite::<f64>(cli.tol),
    }
}

fn blocks(cli: &Cli) -> nearly_g2::Result<Vec<Block>> {
    build_blocks(cli.max_level, cli.cache_dir.as_deref())
}

fn spectra(cli: &Cli, blocks: &[Block]) -> nearly_g2::Result<SpectralReport> {
    spectral_report(blocks, cli.max_level, KERNEL_TOL.max(cli.tol))
}

/// Eigenvalue 7 of `Δ` on functions with multiplicity 8: pins the sign and
/// scale of every block operator.
fn normalization(blocks: &[Block], tol: f64) -> nearly_g2::Result<CheckReport> {
    let spec = bundle_spectrum(blocks, Bundle::Functions, 1)?;
    let line = spec.eigenvalues.iter().find(|l| (l.value - 7.0).abs() <= tol);
    let mut r = CheckReport::new();
    r.verdict(
        "spectra.normalization-pin",
        "laplacian/first-eigenvalue",
        line.is_some_and(|l| l.multiplicity == 8 && l.weights == vec![[0, 0, 1]]),
        match line {
            Some(l) => format!("eigenvalue {} multiplicity {} at {:?}", l.value, l.multiplicity, l.weights),
            None => "eigenvalue 7 missing".into(),
        },
    );
    Ok(r)
}

fn run(cli: &Cli) -> nearly_g2::Result<(Value, u8)> {
    let mut out = json!({ "report_version": REPORT_VERSION, "command": command_name(&cli.command), "config": config(cli) });
    let report = match &cli.command {
        Command::Algebra => algebra(cli),
        Command::Curvature => curvature(cli),
        Command::Spectra { bundle } => {
            let blocks = blocks(cli)?;
            let spec = bundle_spectrum(&blocks, *bundle, cli.max_level)?;
            println!("{} on {} up to level {}", spec.operator, spec.bundle, cli.max_level);
            println!("{:>14}  {:>12}  weights", "eigenvalue", "multiplicity");
            for l in &spec.eigenvalues {
                let ws: Vec<String> = l.weights.iter().map(|w| format!("({},{},{})", w[0], w[1], w[2])).collect();
                println!("{:>14.9}  {:>12}  {}", l.value, l.multiplicity, ws.join(" "));
            }
            out["bundle"] = json!(bundle);
            out["spectrum"] = serde_json::to_value(&spec).expect("spectrum serializes");
            return Ok((out, 0));
        }
        Command::Theorem { which } => {
            let blocks = blocks(cli)?;
            let s = spectra(cli, &blocks)?;
            out["totals"] = serde_json::to_value(&s.totals).expect("totals serialize");
            theorem_check(which.theorem(), &s)
        }
        Command::Instability => {
            let blocks = blocks(cli)?;
            let s = spectra(cli, &blocks)?;
            instability_certificate(&s)
        }
        Command::All => {
            let mut r = algebra(cli);
            r.extend(curvature(cli));
            let blocks = blocks(cli)?;
            r.extend(normalization(&blocks, cli.tol)?);
            r.extend(operator_identity_suite(&blocks, cli.max_level, cli.tol));
            let s = spectra(cli, &blocks)?;
            r.extend(theorem_check(Theorem::A, &s));
            r.extend(theorem_check(Theorem::B, &s));
            r.extend(instability_certificate(&s));
            out["totals"] = serde_json::to_value(&s.totals).expect("totals serialize");
            r
        }
    };
    let mut report = report;
    report.sort();
    print_summary(&report);
    let code = if report.has_errors() {
        2
    } else if report.all_pass() {
        0
    } else {
        1
    };
    out["checks"] = serde_json::to_value(&report.checks).expect("checks serialize");
    out["passed"] = json!(code == 0);
    Ok((out, code))
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Algebra => "algebra".into(),
        Command::Curvature => "curvature".into(),
        Command::Spectra { .. } => "spectra".into(),
        Command::Theorem { which } => format!("theorem-{}", format!("{which:?}").to_lowercase()),
        Command::Instability => "instability".into(),
        Command::All => "all".into(),
    }
}

/// One line per check name: pass count, worst residual, first failure.
fn print_summary(report: &CheckReport) {
    let mut names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    names.dedup();
    println!("{:<6} {:<48} {:>7} {:>11}  details", "status", "check", "passed", "residual");
    for name in names {
        let group: Vec<_> = report.named(name).collect();
        let passed = group.iter().filter(|c| c.status == Status::Pass).count();
        let worst = group.iter().find(|c| c.status != Status::Pass).unwrap_or(&group[0]);
        let status = match worst.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let residual = report.max_residual(name).map_or("-".to_string(), |r| format!("{r:.3e}"));
        let at = worst.weight.map_or(String::new(), |w| format!(" at ({},{},{})", w[0], w[1], w[2]));
        println!("{status:<6} {name:<48} {:>7} {residual:>11}  {}{at}", format!("{passed}/{}", group.len()), worst.details);
    }
    let failed = report.failures().count();
    println!("{} checks, {} not passing", report.checks.len(), failed);
}
