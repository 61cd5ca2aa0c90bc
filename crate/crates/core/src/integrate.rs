//! Contour integrals `∫_γ f(p) dp = ∫ f(γ(t))·γ′(t) dt` and the checks built
//! on them: fundamental theorem, Cauchy's theorem, the estimation lemma and
//! the Cauchy integral formula on H-circles.
//!
//! Full circles use the periodic trapezoid rule, every other smooth piece
//! composite Gauss–Legendre. Error estimates compare the rule with its
//! half-resolution version, which reuses every other node for the trapezoid.
//!
//! Paths that leave a single slice plane are accepted, but the result there
//! depends on the factor order and is experimental.

use crate::error::{Error, Result};
use crate::expr::{antiderivative, eval_quaternion, Expr};
use crate::function::QuaternionFn;
use crate::geometry::{winding_number_in, Path, SlicePlane};
use crate::quadrature::{composite_gauss_legendre, gauss_legendre, GL_PANEL_POINTS};
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// Evaluation budget for refinement.
pub const MAX_EVALUATIONS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Rule {
    /// Trapezoid on full circles, Gauss–Legendre elsewhere.
    #[default]
    Auto,
    /// Same as `Auto`; the trapezoid only applies to full circles anyway.
    TrapezoidPeriodic,
    /// Gauss–Legendre on every piece, circles included.
    GaussLegendreComposite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Nodes per smooth piece.
    pub n_points: usize,
    pub rule: Rule,
    /// Double `n_points` until the error estimate meets `tol`.
    pub refine: bool,
    /// Target for `error_estimate / max(1, |value|)` when refining.
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            n_points: 256,
            rule: Rule::Auto,
            refine: false,
            tol: 1e-10,
        }
    }
}

impl QuadratureConfig {
    pub fn with_points(n_points: usize) -> Self {
        Self {
            n_points,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 8 {
            return Err(Error::InvalidConfig(format!(
                "n_points must be at least 8, got {}",
                self.n_points
            )));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralResult<T> {
    pub value: Quaternion<T>,
    pub error_estimate: T,
    pub n_evaluations: usize,
    /// Distance between the two factor orders of the integrand.
    pub left_right_discrepancy: T,
}

/// Evaluates `f`, turning domain failures into a singularity at parameter `t`.
pub(crate) fn eval_on_path<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    q: Quaternion<T>,
    t: T,
) -> Result<Quaternion<T>> {
    let singular = || Error::SingularOnPath { t: t.as_f64() };
    match f.eval(q) {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(singular()),
        Err(Error::EvalDomain { .. } | Error::DivisionByZero | Error::NonFinite | Error::ZeroQuaternion) => {
            Err(singular())
        }
        Err(e) => Err(e),
    }
}

/// Integrand producing two readings at once, `(primary, alternative)`.
type PairIntegrand<'a, T> =
    dyn Fn(Quaternion<T>, Quaternion<T>, T) -> Result<(Quaternion<T>, Quaternion<T>)> + 'a;

struct PieceSum<T> {
    primary: Quaternion<T>,
    alternative: Quaternion<T>,
    coarse: Quaternion<T>,
    evaluations: usize,
}

fn trapezoid_piece<T: Scalar>(piece: &Path<T>, n: usize, g: &PairIntegrand<'_, T>) -> Result<PieceSum<T>> {
    let n = n + n % 2;
    let (a, b) = piece.interval();
    let dt = (b - a) / T::from_count(n);
    let mut primary = Quaternion::zero();
    let mut alternative = Quaternion::zero();
    let mut even = Quaternion::zero();
    for k in 0..n {
        let t = a + dt * T::from_count(k);
        let (l, r) = g(piece.sample(t)?, piece.velocity(t)?, t)?;
        primary += l;
        alternative += r;
        if k % 2 == 0 {
            even += l;
        }
    }
    Ok(PieceSum {
        primary: primary.scale(dt),
        alternative: alternative.scale(dt),
        coarse: even.scale(dt + dt),
        evaluations: n,
    })
}

fn gauss_piece<T: Scalar>(piece: &Path<T>, n: usize, g: &PairIntegrand<'_, T>) -> Result<PieceSum<T>> {
    let panels = n.div_ceil(GL_PANEL_POINTS).max(2);
    let (a, b) = piece.interval();
    let rule = gauss_legendre(GL_PANEL_POINTS);
    let width = (b - a) / T::from_count(panels);
    let half = width * T::lit(0.5);
    let mut primary = Quaternion::zero();
    let mut alternative = Quaternion::zero();
    for panel in 0..panels {
        let mid = a + width * (T::from_count(panel) + T::lit(0.5));
        let (mut l_acc, mut r_acc) = (Quaternion::zero(), Quaternion::zero());
        for &(node, weight) in &rule {
            let t = mid + half * T::lit(node);
            let (l, r) = g(piece.sample(t)?, piece.velocity(t)?, t)?;
            l_acc += l.scale(T::lit(weight));
            r_acc += r.scale(T::lit(weight));
        }
        primary += l_acc.scale(half);
        alternative += r_acc.scale(half);
    }
    let coarse = composite_gauss_legendre(a, b, panels / 2, |t| {
        Ok::<_, Error>(g(piece.sample(t)?, piece.velocity(t)?, t)?.0)
    })?;
    Ok(PieceSum {
        primary,
        alternative,
        coarse,
        evaluations: GL_PANEL_POINTS * (panels + panels / 2),
    })
}

fn integrate_once<T: Scalar>(
    path: &Path<T>,
    n: usize,
    rule: Rule,
    g: &PairIntegrand<'_, T>,
) -> Result<(IntegralResult<T>, Quaternion<T>)> {
    let mut value = Quaternion::zero();
    let mut alternative = Quaternion::zero();
    let mut error = T::zero();
    let mut evaluations = 0;
    for piece in path.smooth_pieces() {
        let sum = if piece.is_periodic_circle() && rule != Rule::GaussLegendreComposite {
            trapezoid_piece(&piece, n, g)?
        } else {
            gauss_piece(&piece, n, g)?
        };
        value += sum.primary;
        alternative += sum.alternative;
        error += sum.primary.distance(sum.coarse);
        evaluations += sum.evaluations;
    }
    let result = IntegralResult {
        value,
        error_estimate: error,
        n_evaluations: evaluations,
        left_right_discrepancy: value.distance(alternative),
    };
    Ok((result, alternative))
}

/// Integrates both readings; returns the primary result and the alternative value.
fn integrate_pair<T: Scalar>(
    path: &Path<T>,
    cfg: &QuadratureConfig,
    g: &PairIntegrand<'_, T>,
) -> Result<(IntegralResult<T>, Quaternion<T>)> {
    cfg.validate()?;
    let mut n = cfg.n_points;
    let mut spent = 0;
    loop {
        let (mut result, alternative) = integrate_once(path, n, cfg.rule, g)?;
        let pass = result.n_evaluations;
        spent += pass;
        result.n_evaluations = spent;
        let scale = T::one().max(result.value.norm());
        if !cfg.refine || result.error_estimate <= T::lit(cfg.tol) * scale {
            return Ok((result, alternative));
        }
        if spent + 2 * pass > MAX_EVALUATIONS {
            return Err(Error::NonConvergent { evaluations: spent });
        }
        n *= 2;
    }
}

/// `∫_γ f(p) dp` with the integrand ordered `f(γ(t))·γ′(t)`.
///
/// `left_right_discrepancy` holds the distance to the `γ′(t)·f(γ(t))` reading,
/// zero up to rounding whenever `f(γ)` and `γ′` share a slice.
pub fn contour_integral<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    path: &Path<T>,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult<T>> {
    let (result, _) = integrate_pair(path, cfg, &|q, dq, t| {
        let v = eval_on_path(f, q, t)?;
        Ok((v * dq, dq * v))
    })?;
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalTheoremReport<T> {
    pub integral: IntegralResult<T>,
    /// `F(γ(β)) − F(γ(α))`.
    pub expected: Quaternion<T>,
    pub residual: T,
}

/// Compares `∫_γ f dp` with `F(end) − F(start)` for the table antiderivative `F`.
pub fn check_fundamental_theorem<T: Scalar>(
    f: &Expr,
    path: &Path<T>,
    cfg: &QuadratureConfig,
) -> Result<FundamentalTheoremReport<T>> {
    let big_f = antiderivative(f).ok_or_else(|| Error::NoAntiderivativeInTable {
        expr: f.to_string(),
    })?;
    let expected = eval_quaternion(&big_f, path.end_point())? - eval_quaternion(&big_f, path.start_point())?;
    let integral = contour_integral(f, path, cfg)?;
    Ok(FundamentalTheoremReport {
        integral,
        expected,
        residual: integral.value.distance(expected),
    })
}

/// `|∮_γ f dp|` over a closed path, which vanishes for `f` holomorphic inside.
pub fn check_cauchy<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    path: &Path<T>,
    cfg: &QuadratureConfig,
) -> Result<(T, IntegralResult<T>)> {
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    let integral = contour_integral(f, path, cfg)?;
    Ok((integral.value.norm(), integral))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimationReport<T> {
    /// `|∫_γ f dp|`.
    pub lhs: T,
    /// `M · length(γ)`.
    pub rhs: T,
    /// Largest sampled `|f|` on the path.
    pub max_abs: T,
    pub length: T,
}

impl<T: Scalar> EstimationReport<T> {
    /// `lhs ≤ rhs·(1 + 1e-6)`.
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * T::lit(1.0 + 1e-6)
    }
}

/// Estimation lemma `|∫_γ f dp| ≤ M·length(γ)`, with `M` the maximum of `|f|`
/// over `4·n_points + 1` samples per piece.
pub fn estimation_check<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    path: &Path<T>,
    cfg: &QuadratureConfig,
) -> Result<EstimationReport<T>> {
    let integral = contour_integral(f, path, cfg)?;
    let samples = 4 * cfg.n_points;
    let mut max_abs = T::zero();
    for piece in path.smooth_pieces() {
        let (a, b) = piece.interval();
        for k in 0..=samples {
            let t = a + (b - a) * T::from_count(k) / T::from_count(samples);
            max_abs = max_abs.max(eval_on_path(f, piece.sample(t)?, t)?.norm());
        }
    }
    let length = path.length();
    Ok(EstimationReport {
        lhs: integral.value.norm(),
        rhs: max_abs * length,
        max_abs,
        length,
    })
}

/// Reconstructs `f(p₀) = (2π·axis)⁻¹ ∮ (p − p₀)⁻¹ f(p) dp` on an H-circle.
///
/// The prefactor is `−axis/(2π)` on the left, with `axis` signed by the
/// orientation. The right-quotient reading `∮ f(p)(p − p₀)⁻¹ dp` is compared in
/// `left_right_discrepancy`.
pub fn cauchy_integral_formula<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    circle: &Path<T>,
    p0: Quaternion<T>,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult<T>> {
    let Path::Circle { axis, orientation, .. } = circle else {
        return Err(Error::InvalidConfig("the integral formula needs an H-circle".into()));
    };
    let axis = axis.scale(orientation.sign());
    let plane = SlicePlane { origin: p0, axis };
    match winding_number_in(circle, p0, &plane) {
        Ok(1) => {}
        Ok(_) | Err(Error::NotSlicePlanar { .. }) => return Err(Error::PointNotInside),
        Err(e) => return Err(e),
    }
    let (raw, right) = integrate_pair(circle, cfg, &|q, dq, t| {
        let v = eval_on_path(f, q, t)?;
        let kernel = (q - p0).inverse().map_err(|_| Error::SingularOnPath { t: t.as_f64() })?;
        Ok((kernel * v * dq, v * kernel * dq))
    })?;
    let prefactor = axis.scale(-T::one() / T::TAU());
    let value = prefactor * raw.value;
    Ok(IntegralResult {
        value,
        error_estimate: raw.error_estimate / T::TAU(),
        n_evaluations: raw.n_evaluations,
        left_right_discrepancy: value.distance(right * prefactor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::CauchyKernel;
    use crate::geometry::Orientation;
    use std::f64::consts::{PI, TAU};

    type Q = Quaternion<f64>;

    fn e(s: &str) -> Expr {
        s.parse().unwrap()
    }

    fn circle(center: Q, r: f64, axis: Q) -> Path<f64> {
        Path::circle(center, r, axis, Orientation::Positive).unwrap()
    }

    #[test]
    fn kernel_gives_two_pi_axis() {
        let cfg = QuadratureConfig::default();
        let diag = Q::new(0.0, 1.0, 1.0, 1.0).normalized().unwrap();
        for axis in [Q::i(), Q::j(), Q::k(), diag] {
            for center in [Q::zero(), Q::one() + Q::j()] {
                for r in [0.1, 1.0, 2.0] {
                    let kernel = CauchyKernel { center };
                    let v = contour_integral(&kernel, &circle(center, r, axis), &cfg).unwrap();
                    assert!((v.value - axis.scale(TAU)).norm() < 1e-10);
                    assert!(v.error_estimate < 1e-10);
                }
            }
        }
    }

    #[test]
    fn simple_integrals() {
        let cfg = QuadratureConfig::with_points(64);
        let c = circle(Q::zero(), 1.0, Q::i());
        assert!(contour_integral(&e("p"), &c, &cfg).unwrap().value.norm() < 1e-13);
        let q = Q::new(1.0, -2.0, 0.5, 3.0);
        let v = contour_integral(&e("1"), &Path::segment(Q::zero(), q), &cfg).unwrap();
        assert!((v.value - q).norm() < 1e-14);
    }

    #[test]
    fn fundamental_theorem() {
        let cfg = QuadratureConfig::with_points(64);
        let end = Q::one() + Q::j();
        let report = check_fundamental_theorem(&e("p^2"), &Path::segment(Q::zero(), end), &cfg).unwrap();
        assert!(report.residual < 1e-10);
        assert!((report.integral.value - end * end * end.scale(1.0 / 3.0)).norm() < 1e-10);
        let report =
            check_fundamental_theorem(&e("cos(p)"), &Path::segment(Q::zero(), Q::from_real(PI)), &cfg).unwrap();
        assert!(report.residual < 1e-10 && report.expected.norm() < 1e-15);
        assert!(matches!(
            check_fundamental_theorem(&e("1/p"), &Path::segment(Q::one(), Q::from_real(2.0)), &cfg),
            Err(Error::NoAntiderivativeInTable { .. })
        ));
    }

    #[test]
    fn cauchy_theorem_cases() {
        let c = circle(Q::zero(), 1.0, Q::i());
        let (res, _) = check_cauchy(&e("exp(p)"), &c, &QuadratureConfig::with_points(64)).unwrap();
        assert!(res < 1e-12);
        let big = circle(Q::zero(), 2.0, Q::k());
        let (res, _) = check_cauchy(&e("p^5-3*p+2"), &big, &QuadratureConfig::default()).unwrap();
        assert!(res < 1e-10);
        let (res, _) = check_cauchy(&e("1/p"), &c, &QuadratureConfig::default()).unwrap();
        assert!((res - TAU).abs() < 1e-12);
    }

    #[test]
    fn singular_path_and_config_errors() {
        let c = circle(Q::zero(), 1.0, Q::i());
        assert!(matches!(
            contour_integral(&e("1/(p-1)"), &c, &QuadratureConfig::default()),
            Err(Error::SingularOnPath { .. })
        ));
        assert!(matches!(
            contour_integral(&e("p"), &c, &QuadratureConfig::with_points(4)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn refinement_and_budget() {
        let seg = Path::segment(Q::zero(), Q::from_real(1.0));
        let cfg = QuadratureConfig {
            n_points: 16,
            refine: true,
            tol: 1e-12,
            ..Default::default()
        };
        let v = contour_integral(&e("exp(p)"), &seg, &cfg).unwrap();
        assert!((v.value.x - (1f64.exp() - 1.0)).abs() < 1e-12);
        // a near-singular integrand cannot meet an absurd tolerance
        let cfg = QuadratureConfig { tol: 1e-300, ..cfg };
        assert!(matches!(
            contour_integral(&e("1/(p-1.0000001)"), &seg, &cfg),
            Err(Error::NonConvergent { .. })
        ));
    }

    #[test]
    fn estimation_cases() {
        let cfg = QuadratureConfig::default();
        let c = circle(Q::zero(), 1.0, Q::i());
        let r = estimation_check(&e("1"), &c, &cfg).unwrap();
        assert!(r.lhs < 1e-14 && (r.rhs - TAU).abs() < 1e-12);
        let p0 = Q::new(0.3, 0.0, 0.2, 0.0);
        let r = estimation_check(&CauchyKernel { center: p0 }, &circle(p0, 0.7, Q::j()), &cfg).unwrap();
        assert!((r.lhs - r.rhs).abs() < 1e-9 && r.holds());
        let r = estimation_check(&e("p"), &Path::segment(Q::zero(), Q::one()), &cfg).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-14 && (r.rhs - 1.0).abs() < 1e-14);
    }

    #[test]
    fn integral_formula_cases() {
        let cfg = QuadratureConfig::default();
        let c = circle(Q::zero(), 1.0, Q::j());
        let v = cauchy_integral_formula(&e("3"), &c, Q::new(0.1, 0.0, 0.2, 0.0), &cfg).unwrap();
        assert!((v.value - Q::from_real(3.0)).norm() < 1e-12);

        let c = circle(Q::zero(), 2.0, Q::j());
        let v = cauchy_integral_formula(&e("exp(p)"), &c, Q::j(), &cfg).unwrap();
        assert!((v.value - Q::new(1f64.cos(), 0.0, 1f64.sin(), 0.0)).norm() < 1e-12);
        assert!(v.left_right_discrepancy < 1e-10);

        let c = circle(Q::zero(), 1.0, Q::k());
        let p0 = Q::new(0.5, 0.0, 0.0, 0.5);
        let v = cauchy_integral_formula(&e("p^2"), &c, p0, &cfg).unwrap();
        assert!((v.value - p0 * p0).norm() < 1e-12);

        let neg = Path::circle(Q::zero(), 1.0, Q::k(), Orientation::Negative).unwrap();
        let v = cauchy_integral_formula(&e("p^2"), &neg, p0, &cfg).unwrap();
        assert!((v.value - p0 * p0).norm() < 1e-12);

        assert!(matches!(
            cauchy_integral_formula(&e("p"), &c, Q::from_real(3.0), &cfg),
            Err(Error::PointNotInside)
        ));
        assert!(matches!(
            cauchy_integral_formula(&e("p"), &c, Q::j().scale(0.5), &cfg),
            Err(Error::PointNotInside)
        ));
    }

    #[test]
    fn reverse_and_concat() {
        let cfg = QuadratureConfig::default();
        let f = e("exp(p)*p");
        let a = Path::segment(Q::zero(), Q::new(1.0, 0.0, 1.0, 0.0));
        let b = Path::segment(a.end_point(), Q::new(2.0, 0.0, 0.5, 0.0));
        let forward = contour_integral(&f, &a, &cfg).unwrap();
        let back = contour_integral(&f, &a.clone().reverse(), &cfg).unwrap();
        assert!((forward.value + back.value).norm() < 1e-12);
        let both = contour_integral(&f, &Path::concat(vec![a, b.clone()]).unwrap(), &cfg).unwrap();
        let second = contour_integral(&f, &b, &cfg).unwrap();
        assert!((both.value - forward.value - second.value).norm() < 1e-10);
    }
}
