//! `hquat`: command-line front-end for the quaternionic calculus library.
//!
//! Every command prints one JSON report on stdout (or a table with `--human`)
//! and exits with 0 on success or pass, 1 on a failed check, 2 on usage or
//! parse errors and 3 on runtime errors.

mod report;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hquat::calculus::check_h_holomorphy;
use hquat::integrate::{contour_integral, QuadratureConfig};
use hquat::series::{classify_singularity_with, laurent_coeffs_in, residue_in, taylor_coeffs_in, ClassifyOptions};
use hquat::verify::{run_suite, Suite};
use hquat::{Error, Expr, Path64, Quat};
use serde_json::{json, Value};

use report::{laurent_json, q, Report};

#[derive(Parser, Debug)]
#[command(name = "hquat", version, about = "Quaternionic (H-holomorphic) calculus toolkit")]
struct Cli {
    /// Print human-readable tables instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Quadrature {
    /// Quadrature nodes per smooth piece (or circle samples).
    #[arg(long, env = "HQUAT_DEFAULT_N", default_value_t = 256)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test the generalized Cauchy-Riemann conditions at a point with y = 0.
    CheckHolo {
        /// Expression in p, or `-` to read it from stdin.
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
    },
    /// Contour integral of f along a path.
    Integrate {
        #[arg(long = "fn")]
        function: String,
        /// Path spec, e.g. `circle:center=0;r=1;axis=i`.
        #[arg(long)]
        path: String,
        #[command(flatten)]
        quad: Quadrature,
        /// Refine until the relative error estimate is below this.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Taylor coefficients a_0..a_N.
    Taylor(Expansion),
    /// Laurent coefficients a_0..a_N and b_1..b_N.
    Laurent(Expansion),
    /// Residue b_1 at a point.
    Residue {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        /// Slice axis, used when the point is real.
        #[arg(long)]
        axis: Option<String>,
        #[command(flatten)]
        quad: Quadrature,
    },
    /// Classify a point as regular, removable, pole(m) or essential.
    Classify {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = hquat::series::CLASSIFY_RADIUS)]
        radius: f64,
        #[arg(long)]
        axis: Option<String>,
        #[command(flatten)]
        quad: Quadrature,
    },
    /// Run built-in verification suites.
    Verify {
        /// cauchy, ftc, cif, estimation, residue-thm or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        quad: Quadrature,
    },
}

#[derive(Args, Debug)]
struct Expansion {
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    center: String,
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long)]
    axis: Option<String>,
    #[command(flatten)]
    quad: Quadrature,
}

/// A failure tagged with its exit code.
struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let usage = matches!(
            error,
            Error::Syntax { .. }
                | Error::UnknownFunction { .. }
                | Error::NonIntegerExponent { .. }
                | Error::InvalidLiteral { .. }
                | Error::InvalidPathSpec { .. }
                | Error::NotThreeDimensionalPoint { .. }
                | Error::InvalidConfig(_)
                | Error::NotUnitImaginary
                | Error::AxisNotInSlice
        );
        Failure {
            code: if usage { 2 } else { 3 },
            error,
        }
    }
}

fn read_function(text: &str, rep: &mut Report) -> Result<Expr, Failure> {
    let source = if text == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure {
            code: 2,
            error: Error::InvalidConfig(format!("reading stdin: {e}")),
        })?;
        buf.trim().to_string()
    } else {
        text.to_string()
    };
    rep.input("fn", json!(source));
    Ok(source.parse::<Expr>()?)
}

fn quat(text: &str) -> Result<Quat, Failure> {
    Ok(text.parse::<Quat>()?)
}

fn axis(text: &Option<String>) -> Result<Option<Quat>, Failure> {
    text.as_deref().map(quat).transpose()
}

fn run(command: &Command, rep: &mut Report) -> Result<(), Failure> {
    match command {
        Command::CheckHolo { function, at, tol, step } => {
            let f = read_function(function, rep)?;
            rep.input("at", json!(at));
            let report = check_h_holomorphy(&f, quat(at)?, *tol, *step)?;
            rep.result = json!({
                "point": q(report.point),
                "residuals": report.residuals,
                "passed": report.passed,
                "tol": report.tol,
                "step": report.partials.step,
                "left_right_gap": [report.left_right_gap().0, report.left_right_gap().1],
            });
            rep.pass = Some(report.passes());
        }
        Command::Integrate { function, path, quad, tol } => {
            let f = read_function(function, rep)?;
            rep.input("path", json!(path)).input("n", json!(quad.n));
            let p: Path64 = path.parse()?;
            let mut cfg = QuadratureConfig::with_points(quad.n);
            if let Some(tol) = tol {
                rep.input("tol", json!(tol));
                cfg.refine = true;
                cfg.tol = *tol;
            }
            let r = contour_integral(&f, &p, &cfg)?;
            rep.result = json!({
                "value": q(r.value),
                "left_right_discrepancy": r.left_right_discrepancy,
            });
            rep.error_estimate = Some(r.error_estimate);
            rep.n_evaluations = Some(r.n_evaluations);
        }
        Command::Taylor(e) | Command::Laurent(e) => {
            let f = read_function(&e.function, rep)?;
            rep.input("center", json!(e.center))
                .input("radius", json!(e.radius))
                .input("order", json!(e.order));
            let center = quat(&e.center)?;
            let cfg = QuadratureConfig::with_points(e.quad.n);
            let data = if matches!(command, Command::Taylor(_)) {
                taylor_coeffs_in(&f, center, axis(&e.axis)?, e.radius, e.order, &cfg)?
            } else {
                laurent_coeffs_in(&f, center, axis(&e.axis)?, e.radius, e.order, &cfg)?
            };
            rep.error_estimate = data.err.iter().copied().reduce(f64::max);
            rep.result = laurent_json(&data);
        }
        Command::Residue { function, at, radius, axis: ax, quad } => {
            let f = read_function(function, rep)?;
            rep.input("at", json!(at)).input("radius", json!(radius));
            let cfg = QuadratureConfig::with_points(quad.n);
            let res = residue_in(&f, quat(at)?, axis(ax)?, *radius, &cfg)?;
            rep.result = json!({ "residue": q(res) });
        }
        Command::Classify { function, at, radius, axis: ax, quad } => {
            let f = read_function(function, rep)?;
            rep.input("at", json!(at)).input("radius", json!(radius));
            let opts = ClassifyOptions {
                radius: *radius,
                axis: axis(ax)?,
                ..ClassifyOptions::default()
            };
            let class = classify_singularity_with(&f, quat(at)?, &opts, &QuadratureConfig::with_points(quad.n))?;
            rep.result = json!({
                "kind": class.kind.to_string(),
                "radius": class.radius,
                "threshold": class.threshold,
                "evidence": class.evidence,
            });
        }
        Command::Verify { suite, quad } => {
            rep.input("suite", json!(suite)).input("n", json!(quad.n));
            let suites = Suite::parse_selection(suite)?;
            let rows: Vec<_> = suites.into_iter().flat_map(|s| run_suite(s, quad.n)).collect();
            rep.pass = Some(rows.iter().all(|r| r.passed));
            rep.result = json!({
                "rows": rows.iter().map(|r| json!({
                    "suite": r.suite.name(),
                    "case": r.case,
                    "measured": r.measured,
                    "tolerance": r.tolerance,
                    "pass": r.passed,
                    "error": r.error,
                })).collect::<Vec<Value>>(),
            });
        }
    }
    Ok(())
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::CheckHolo { .. } => "check-holo",
        Command::Integrate { .. } => "integrate",
        Command::Taylor(_) => "taylor",
        Command::Laurent(_) => "laurent",
        Command::Residue { .. } => "residue",
        Command::Classify { .. } => "classify",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut rep = Report::new(command_name(&cli.command));
    let outcome = run(&cli.command, &mut rep);
    rep.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let code = match outcome {
        Ok(()) => match rep.pass {
            Some(false) => 1,
            _ => 0,
        },
        Err(failure) => {
            rep.set_error(&failure.error);
            failure.code
        }
    };
    if cli.human {
        rep.print_human();
    } else {
        println!("{}", rep.to_json());
    }
    ExitCode::from(code)
}
