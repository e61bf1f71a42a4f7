//! `plumbline`: command-line front end. JSON goes to stdout (or `--out`),
//! one-line summaries to stderr.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
//! configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use plumbline::checks::{self, SelftestOptions};
use plumbline::curve_periods::{
    pair_period_first_order, star_period_leading, tree_period_first_order, PairPlumbing,
    PeriodMatrixJet, ScaleMode, StarConfig, TreeConfig,
};
use plumbline::field::DEFAULT_TOLERANCE;
use plumbline::relations::{verify_asymptotic_vanishing, OcticVariant, VanishingOptions};
use plumbline::surfaces::{
    dim_K, dim_V_Gamma, dim_W, dim_period_domain, span_dimension_E_Gamma, surface_report,
    SurfaceGraphModel,
};
use plumbline::{alkanes, rng, Coefficient, Complex64, GaussianRational, JetRing};

#[derive(Parser, Debug)]
#[command(name = "plumbline", version, about = "Period matrices of plumbed curve and surface families")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Exact Gaussian-rational arithmetic with the 2πi factor divided out.
    #[arg(long, global = true, conflicts_with = "numeric")]
    exact: bool,
    /// Complex floating-point arithmetic (the default).
    #[arg(long, global = true)]
    numeric: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate or count alkanes.
    #[command(subcommand)]
    Alkanes(AlkanesCmd),
    /// First-order period matrices from a JSON configuration.
    #[command(subcommand)]
    Periods(PeriodsCmd),
    /// Octic relations.
    #[command(subcommand)]
    Relations(RelationsCmd),
    /// Surface strata.
    #[command(subcommand)]
    Surfaces(SurfacesCmd),
    /// Run the full verification suite.
    Selftest {
        /// Evaluate the corrupted octic instead of the corrected one.
        #[arg(long)]
        inject_corrupted_octic: bool,
    },
}

#[derive(Subcommand, Debug)]
enum AlkanesCmd {
    /// One representative per isomorphism class.
    Enum {
        #[arg(long)]
        genus: usize,
    },
    /// Class counts for genus 1..=max.
    Count {
        #[arg(long)]
        max: usize,
    },
}

#[derive(Args, Debug)]
struct PeriodArgs {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Truncation order of the jet ring.
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum PeriodsCmd {
    Pair(PeriodArgs),
    Star(PeriodArgs),
    Tree(PeriodArgs),
}

#[derive(Subcommand, Debug)]
enum RelationsCmd {
    /// Mod-T⁹ vanishing of every octic on random perturbed star families.
    Verify {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 17)]
        order: u32,
        /// Evaluate the corrupted octic instead of the corrected one.
        #[arg(long)]
        corrupted_octic: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SurfacesCmd {
    /// Stratum dimensions for genus h.
    Dims {
        #[arg(long)]
        genus: usize,
    },
    /// Span dimension of the Π_e for every alkane of genus h.
    Egamma {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
}

/// Failure modes that map to exit code 2.
#[derive(Debug)]
enum CliError {
    Core(plumbline::Error),
    Io(String),
    Usage(String),
}

impl From<plumbline::Error> for CliError {
    fn from(e: plumbline::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(s) | CliError::Usage(s) => f.write_str(s),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// A JSON document, whether every verification in it passed, and a summary.
struct Outcome {
    json: Value,
    pass: bool,
    summary: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.json).expect("serializable") + "\n";
            if let Err(e) = emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprintln!("{}", out.summary);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tolerance() -> CliResult<f64> {
    match std::env::var("PLUMBLINE_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(CliError::Usage(format!("PLUMBLINE_TOL must be a non-negative number, got {s:?}"))),
        },
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    // Reject a malformed PLUMBLINE_TOL even for commands that never read it.
    tolerance()?;
    match &cli.command {
        Command::Alkanes(c) => run_alkanes(c),
        Command::Periods(c) => {
            if cli.exact {
                run_periods::<GaussianRational>(c, ScaleMode::ExactUnits)
            } else {
                run_periods::<Complex64>(c, ScaleMode::Numeric)
            }
        }
        Command::Relations(RelationsCmd::Verify { genus, trials, order, corrupted_octic }) => {
            let variant = if *corrupted_octic { OcticVariant::Printed } else { OcticVariant::Corrected };
            let args = (*genus, *trials, *order, variant, cli.seed);
            if cli.exact {
                run_relations::<GaussianRational>(args, ScaleMode::ExactUnits)
            } else {
                run_relations::<Complex64>(args, ScaleMode::Numeric)
            }
        }
        Command::Surfaces(c) => run_surfaces(c, cli.seed),
        Command::Selftest { inject_corrupted_octic } => {
            let opts = SelftestOptions {
                seed: cli.seed,
                variant: if *inject_corrupted_octic { OcticVariant::Printed } else { OcticVariant::Corrected },
                ..Default::default()
            };
            let report = checks::selftest_report(&opts)?;
            let summary = format!(
                "selftest: {}/{} checks passed",
                report.summary.passed, report.summary.total
            );
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            let summary = if failed.is_empty() { summary } else { format!("{summary}; failed: {}", failed.join(", ")) };
            Ok(Outcome {
                pass: report.all_pass(),
                json: serde_json::to_value(&report).expect("serializable"),
                summary,
            })
        }
    }
}

fn run_alkanes(c: &AlkanesCmd) -> CliResult<Outcome> {
    match c {
        AlkanesCmd::Enum { genus } => {
            let reps = alkanes::enumerate_alkanes(*genus)?;
            Ok(Outcome {
                summary: format!("{} alkanes of genus {genus}", reps.len()),
                json: Value::Array(reps.iter().map(|a| a.to_json()).collect()),
                pass: true,
            })
        }
        AlkanesCmd::Count { max } => {
            let counts = alkanes::alkane_counts(*max)?;
            Ok(Outcome {
                summary: format!("alkane counts for genus 1..={max}: {counts:?}"),
                json: json!({ "max": max, "counts": counts }),
                pass: true,
            })
        }
    }
}

fn read_config(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Core(e.into()))
}

fn run_periods<F: Coefficient>(c: &PeriodsCmd, mode: ScaleMode) -> CliResult<Outcome> {
    let tol = tolerance()?;
    let (kind, m): (&str, PeriodMatrixJet<F>) = match c {
        PeriodsCmd::Pair(a) => {
            let p = PairPlumbing::<F>::from_json(&read_config(&a.config)?)?;
            let ring = JetRing::with_tolerance([p.variable.clone()], a.order.unwrap_or(1), tol)?;
            ("pair", pair_period_first_order(&p, &ring, mode)?)
        }
        PeriodsCmd::Star(a) => {
            let s = StarConfig::<F>::from_json(&read_config(&a.config)?)?;
            let ring = JetRing::with_tolerance(s.variables.clone(), a.order.unwrap_or(2), tol)?;
            ("star", star_period_leading(&s, &ring, mode)?)
        }
        PeriodsCmd::Tree(a) => {
            let t = TreeConfig::<F>::from_json(&read_config(&a.config)?)?;
            let ring = JetRing::with_tolerance(t.variables(), a.order.unwrap_or(1), tol)?;
            ("tree", tree_period_first_order(&t, &ring, mode)?)
        }
    };
    let symmetric = m.is_symmetric();
    Ok(Outcome {
        summary: format!("{kind}: genus {} period matrix ({} mode)", m.genus(), mode.name()),
        json: m.to_json(),
        pass: symmetric,
    })
}

fn run_relations<F: Coefficient>(
    (genus, trials, order, variant, seed): (usize, usize, u32, OcticVariant, u64),
    mode: ScaleMode,
) -> CliResult<Outcome> {
    if genus < 4 {
        return Err(CliError::Usage("relations verify needs --genus >= 4".into()));
    }
    let tol = tolerance()?;
    let mut rng = rng::substream(seed, "cli/relations");
    let mut reports = Vec::with_capacity(trials);
    for k in 0..trials {
        let star = StarConfig::<F>::random(genus, &mut rng)?;
        let opts = VanishingOptions {
            order,
            seed: seed.wrapping_add(k as u64),
            variant,
            mode,
            tolerance: tol,
            ..Default::default()
        };
        reports.push(verify_asymptotic_vanishing(&star, &opts)?);
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    Ok(Outcome {
        summary: format!("relations: {passed}/{trials} trials vanish through degree 16 (g = {genus})"),
        pass: passed == trials,
        json: json!({
            "command": { "name": "relations verify", "genus": genus, "trials": trials, "order": order, "seed": seed, "mode": mode.name() },
            "trials": reports,
            "pass": passed == trials,
        }),
    })
}

fn run_surfaces(c: &SurfacesCmd, seed: u64) -> CliResult<Outcome> {
    match c {
        SurfacesCmd::Dims { genus } => {
            let h = *genus;
            let mut pass = true;
            let mut per_alkane = Vec::new();
            for a in alkanes::enumerate_alkanes(h)? {
                let v = match dim_V_Gamma(&a) {
                    Ok(d) => json!(d),
                    Err(plumbline::Error::FormulaViolation(msg)) => {
                        pass = false;
                        json!({ "violation": msg })
                    }
                    Err(e) => return Err(e.into()),
                };
                per_alkane.push(json!({ "code": a.canonical_code().as_str(), "V_Gamma": v }));
            }
            Ok(Outcome {
                summary: format!("surfaces: dimensions for h = {h}"),
                json: json!({
                    "h": h,
                    "dims": {
                        "V_h": dim_period_domain(h)?,
                        "K": (0..=4).map(dim_K).collect::<Result<Vec<_>, _>>()?,
                        "W_1h": dim_W(&vec![1; h])?,
                        "W_h": dim_W(&[h])?,
                        "V_Gamma_expected": 9 * h + 9,
                    },
                    "alkanes": per_alkane,
                }),
                pass,
            })
        }
        SurfacesCmd::Egamma { genus, trials } => {
            let h = *genus;
            let mut rng = rng::substream(seed, "cli/egamma");
            let mut entries = Vec::new();
            let mut pass = true;
            for a in alkanes::enumerate_alkanes(h)? {
                let mut spans = Vec::with_capacity(*trials);
                let mut first = None;
                for _ in 0..*trials {
                    let m = SurfaceGraphModel::<GaussianRational>::random_k3(a.clone(), &mut rng)?;
                    spans.push(span_dimension_E_Gamma(&m)?);
                    if first.is_none() {
                        first = Some(surface_report(&m)?);
                    }
                }
                let ok = spans.iter().all(|&d| d + 1 == h);
                pass &= ok;
                let mut entry = first.unwrap_or_else(|| json!({ "alkane": a.to_json(), "h": h }));
                entry["span_dims"] = json!(spans);
                entry["pass"] = json!(ok);
                entries.push(entry);
            }
            Ok(Outcome {
                summary: format!("surfaces: span dimension h-1 for {} alkanes of genus {h}: {pass}", entries.len()),
                json: json!({ "h": h, "seed": seed, "trials": trials, "models": entries, "pass": pass }),
                pass,
            })
        }
    }
}
