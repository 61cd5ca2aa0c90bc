//! Built-in verification suites: fixed cases with known answers, each
//! reported as one row with the measured discrepancy and its tolerance.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{eval_quaternion, Expr};
use crate::function::CauchyKernel;
use crate::geometry::{Orientation, Path};
use crate::integrate::{
    cauchy_integral_formula, check_cauchy, check_fundamental_theorem, contour_integral, estimation_check,
    QuadratureConfig,
};
use crate::quat::Quaternion;
use crate::series::residue_theorem_check;

type Q = Quaternion<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Cauchy,
    Ftc,
    Cif,
    Estimation,
    ResidueThm,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Cauchy, Suite::Ftc, Suite::Cif, Suite::Estimation, Suite::ResidueThm];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cauchy => "cauchy",
            Suite::Ftc => "ftc",
            Suite::Cif => "cif",
            Suite::Estimation => "estimation",
            Suite::ResidueThm => "residue-thm",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_selection(text: &str) -> Result<Vec<Suite>> {
        if text == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![text.parse()?])
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub suite: Suite,
    pub case: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub error: Option<String>,
}

fn row(suite: Suite, case: impl Into<String>, tolerance: f64, measured: Result<f64>) -> VerifyRow {
    let case = case.into();
    match measured {
        Ok(m) => VerifyRow {
            suite,
            case,
            measured: m,
            tolerance,
            passed: m.is_finite() && m <= tolerance,
            error: None,
        },
        Err(e) => VerifyRow {
            suite,
            case,
            measured: f64::NAN,
            tolerance,
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

fn expr(text: &str) -> Expr {
    text.parse().expect("built-in expression")
}

fn circle(center: Q, r: f64, axis: Q) -> Path<f64> {
    Path::circle(center, r, axis, Orientation::Positive).expect("built-in circle")
}

fn axes() -> [(&'static str, Q); 4] {
    let diag = Q::new(0.0, 1.0, 1.0, 1.0).normalized().expect("nonzero");
    [("i", Q::i()), ("j", Q::j()), ("k", Q::k()), ("(i+j+k)/sqrt3", diag)]
}

/// Runs one suite; `n_points` sets the quadrature resolution.
pub fn run_suite(suite: Suite, n_points: usize) -> Vec<VerifyRow> {
    let cfg = QuadratureConfig::with_points(n_points);
    match suite {
        Suite::Cauchy => cauchy_rows(&cfg),
        Suite::Ftc => ftc_rows(&cfg),
        Suite::Cif => cif_rows(&cfg),
        Suite::Estimation => estimation_rows(&cfg),
        Suite::ResidueThm => residue_rows(&cfg),
    }
}

fn cauchy_rows(cfg: &QuadratureConfig) -> Vec<VerifyRow> {
    let mut rows = Vec::new();
    for f in ["p", "p^2", "exp(p)", "sin(p)", "p^5-3*p+2"] {
        for (name, axis) in axes() {
            let path = circle(Q::from_real(0.5), 1.5, axis);
            let measured = check_cauchy(&expr(f), &path, cfg).map(|(res, _)| res);
            rows.push(row(Suite::Cauchy, format!("{f} on circle axis {name}"), 1e-10, measured));
        }
    }
    for (name, axis) in axes() {
        for center in [Q::zero(), Q::one() + Q::j()] {
            for r in [0.1, 1.0, 2.0] {
                let measured = contour_integral(&CauchyKernel { center }, &circle(center, r, axis), cfg)
                    .map(|v| v.value.distance(axis.scale(TAU)));
                rows.push(row(
                    Suite::Cauchy,
                    format!("kernel around {center} r={r} axis {name}"),
                    1e-10,
                    measured,
                ));
            }
        }
    }
    rows
}

fn ftc_rows(cfg: &QuadratureConfig) -> Vec<VerifyRow> {
    let cases = [
        ("p^2", Path::segment(Q::zero(), Q::one() + Q::j())),
        ("cos(p)", Path::segment(Q::zero(), Q::from_real(PI))),
        ("exp(2*p+1)", Path::segment(Q::new(-1.0, 0.0, 0.0, 0.5), Q::new(0.5, 0.0, 0.0, 1.0))),
        ("(3*p-1)^3", Path::segment(Q::zero(), Q::new(1.0, 0.5, 0.0, 0.0))),
        ("p^2", circle(Q::zero(), 1.0, Q::k())),
        (
            "sin(p)+p",
            Path::concat(vec![
                Path::segment(Q::zero(), Q::one()),
                Path::segment(Q::one(), Q::new(1.0, 0.0, 1.0, 0.0)),
            ])
            .expect("chained segments"),
        ),
    ];
    cases
        .into_iter()
        .map(|(f, path)| {
            let measured = check_fundamental_theorem(&expr(f), &path, cfg).map(|r| r.residual);
            row(Suite::Ftc, format!("{f} from {} to {}", path.start_point(), path.end_point()), 1e-10, measured)
        })
        .collect()
}

fn cif_rows(cfg: &QuadratureConfig) -> Vec<VerifyRow> {
    let points = [
        Q::new(0.1, 0.0, 0.2, 0.0),
        Q::new(-0.3, 0.4, 0.0, 0.0),
        Q::new(0.2, 0.0, 0.0, -0.5),
        Q::new(0.0, 0.3, 0.3, 0.3),
    ];
    let mut rows = Vec::new();
    for f in ["exp(p)", "sin(p)", "p^2"] {
        let f = expr(f);
        for p0 in points {
            let axis = p0.imaginary_unit().expect("off the real axis");
            let path = circle(Q::from_real(p0.x), 1.0, axis);
            let result = cauchy_integral_formula(&f, &path, p0, cfg);
            let measured = result.clone().and_then(|r| {
                let direct = eval_quaternion(&f, p0)?;
                Ok(r.value.distance(direct) / direct.norm().max(1e-300))
            });
            rows.push(row(Suite::Cif, format!("{f} at {p0} (relative)"), 1e-9, measured));
            rows.push(row(
                Suite::Cif,
                format!("{f} at {p0} left/right quotient"),
                1e-10,
                result.map(|r| r.left_right_discrepancy),
            ));
        }
    }
    rows
}

fn estimation_rows(cfg: &QuadratureConfig) -> Vec<VerifyRow> {
    let mut rows = Vec::new();
    let excess = |lhs: f64, rhs: f64| (lhs - rhs * (1.0 + 1e-6)).max(0.0);
    let cases = [
        ("1", circle(Q::zero(), 1.0, Q::i())),
        ("p", Path::segment(Q::zero(), Q::one())),
        ("exp(p)", circle(Q::zero(), 2.0, Q::j())),
        ("p^3-p", Path::segment(Q::new(-1.0, 0.0, 1.0, 0.0), Q::new(2.0, 0.5, -1.0, 0.0))),
        ("1/(p-3)", circle(Q::zero(), 1.0, Q::k())),
    ];
    for (f, path) in cases {
        let measured = estimation_check(&expr(f), &path, cfg).map(|r| excess(r.lhs, r.rhs));
        rows.push(row(Suite::Estimation, format!("{f}: lhs above rhs"), 0.0, measured));
    }
    for (name, axis) in axes() {
        let p0 = Q::new(0.3, 0.0, 0.0, 0.0) + axis.scale(0.2);
        let measured =
            estimation_check(&CauchyKernel { center: p0 }, &circle(p0, 0.7, axis), cfg).map(|r| (r.lhs - r.rhs).abs());
        rows.push(row(Suite::Estimation, format!("tight kernel axis {name}"), 1e-9, measured));
    }
    rows
}

fn residue_rows(cfg: &QuadratureConfig) -> Vec<VerifyRow> {
    let two_poles = expr("1/((p-1)*(p+1))");
    let cases = [
        ("1/p, unit circle", expr("1/p"), circle(Q::zero(), 1.0, Q::i()), vec![Q::zero()]),
        (
            "1/((p-1)(p+1)), radius 2",
            two_poles.clone(),
            circle(Q::zero(), 2.0, Q::j()),
            vec![Q::one(), -Q::one()],
        ),
        (
            "1/((p-1)(p+1)), only p=1 enclosed",
            two_poles,
            circle(Q::one() + Q::k().scale(0.5), 1.5, Q::k()),
            vec![Q::one()],
        ),
        (
            "exp(p)/(p^2+1), both poles",
            expr("exp(p)/(p^2+1)"),
            circle(Q::zero(), 2.0, Q::i()),
            vec![Q::i(), -Q::i()],
        ),
        (
            "sin(p)/p^4, clockwise",
            expr("sin(p)/p^4"),
            circle(Q::zero(), 1.0, Q::j()).reverse(),
            vec![Q::zero()],
        ),
    ];
    cases
        .into_iter()
        .map(|(name, f, path, poles)| {
            let measured = residue_theorem_check(&f, &path, &poles, cfg).map(|r| r.residual);
            row(Suite::ResidueThm, name, 1e-8, measured)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for suite in Suite::ALL {
            for r in run_suite(suite, 256) {
                assert!(r.passed, "{r:?}");
            }
        }
    }

    #[test]
    fn selection() {
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 5);
        assert_eq!(Suite::parse_selection("residue-thm").unwrap(), vec![Suite::ResidueThm]);
        assert!(Suite::parse_selection("stokes").is_err());
    }
}
