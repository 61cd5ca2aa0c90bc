//! Taylor and Laurent coefficients from one sampled slice circle, residues,
//! singularity classification and the residue theorem on a slice loop.
//!
//! For a circle `γ(t) = p₀ + w(t)`, `w = r·exp(axis·t)`, the coefficients are
//! the discrete sums
//!
//! ```text
//! aₙ = (−axis/2π) Σ f(γₖ)·wₖ^-(n+1)·γ′ₖ·Δt
//! bₙ = (−axis/2π) Σ f(γₖ)·wₖ^(n−1)·γ′ₖ·Δt
//! ```
//!
//! over `M ≥ max(256, 8N)` equally spaced nodes. The error attached to each
//! coefficient is its distance to the same sum over the even nodes only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::QuaternionFn;
use crate::geometry::{fit_slice_plane, winding_number_in, Path, SlicePlane};
use crate::integrate::{contour_integral, eval_on_path, IntegralResult, QuadratureConfig};
use crate::quat::{Quaternion, DEFAULT_V_MIN};
use crate::scalar::Scalar;

/// Default radius for singularity classification.
pub const CLASSIFY_RADIUS: f64 = 0.1;
/// Default largest principal-part index examined by the classifier.
pub const CLASSIFY_N_MAX: usize = 24;
/// Relative significance threshold for principal-part modes.
pub const CLASSIFY_THRESHOLD: f64 = 1e-8;

/// Coefficients around `center` in the slice of `axis`.
///
/// `err` lists the estimates for `a₀ … a_N` followed by those for `b₁ … b_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct LaurentData<T> {
    pub center: Quaternion<T>,
    pub axis: Quaternion<T>,
    pub radius: T,
    pub a: Vec<Quaternion<T>>,
    pub b: Vec<Quaternion<T>>,
    pub err: Vec<T>,
}

impl<T: Scalar> LaurentData<T> {
    pub fn err_a(&self) -> &[T] {
        &self.err[..self.a.len()]
    }

    pub fn err_b(&self) -> &[T] {
        &self.err[self.a.len()..]
    }

    /// `Σ aₙ (p−p₀)ⁿ + Σ bₙ (p−p₀)⁻ⁿ`, evaluated for `p` in the coefficient slice.
    pub fn eval(&self, p: Quaternion<T>) -> Result<Quaternion<T>> {
        let w = p - self.center;
        let mut total = Quaternion::zero();
        let mut power = Quaternion::one();
        for a in &self.a {
            total += *a * power;
            power = power * w;
        }
        if !self.b.is_empty() {
            let inv = w.inverse()?;
            let mut power = inv;
            for b in &self.b {
                total += *b * power;
                power = power * inv;
            }
        }
        Ok(total)
    }

    /// Largest distance of any coefficient from the slice `span{1, axis}`.
    pub fn slice_deviation(&self) -> T {
        self.a
            .iter()
            .chain(&self.b)
            .map(|c| {
                let im = c.im();
                (im - self.axis.scale(im.dot(self.axis))).norm()
            })
            .fold(T::zero(), T::max)
    }
}

/// Slice axis used for expansions around `p0`: `I(p₀)` off the real axis,
/// otherwise `hint` or `i`. A hint not parallel to `I(p₀)` is rejected.
pub fn expansion_axis<T: Scalar>(p0: Quaternion<T>, hint: Option<Quaternion<T>>) -> Result<Quaternion<T>> {
    let hint = hint
        .map(|h| h.normalized().filter(|n| n.is_unit_imaginary()).ok_or(Error::NotUnitImaginary))
        .transpose()?;
    if p0.imag_norm() <= T::lit(DEFAULT_V_MIN) {
        return Ok(hint.unwrap_or_else(Quaternion::i));
    }
    let unit = p0.imaginary_unit()?;
    match hint {
        None => Ok(unit),
        Some(h) if h.dot(unit).abs() >= T::one() - T::lit(1e-9) => Ok(h),
        Some(_) => Err(Error::AxisNotInSlice),
    }
}

struct Expansion<T> {
    data: LaurentData<T>,
    max_abs: T,
}

fn expand<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    axis: Quaternion<T>,
    r: T,
    n: usize,
    with_principal: bool,
    cfg: &QuadratureConfig,
) -> Result<Expansion<T>> {
    cfg.validate()?;
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::InvalidConfig("radius must be positive".into()));
    }
    let m = 256.max(8 * n).max(cfg.n_points);
    let m = m + m % 2;
    let nb = if with_principal { n } else { 0 };
    let dt = T::TAU() / T::from_count(m);
    let mut sum_a = vec![Quaternion::zero(); n + 1];
    let mut even_a = sum_a.clone();
    let mut sum_b = vec![Quaternion::zero(); nb];
    let mut even_b = sum_b.clone();
    let mut max_abs = T::zero();
    for k in 0..m {
        let t = dt * T::from_count(k);
        let w = Quaternion::axis_exp(axis, t).scale(r);
        let dgamma = axis * w;
        let value = eval_on_path(f, p0 + w, t)?;
        max_abs = max_abs.max(value.norm());
        let w_inv = w.inverse()?;
        let mut power = w_inv;
        for (j, slot) in sum_a.iter_mut().enumerate() {
            let term = value * power * dgamma;
            *slot += term;
            if k % 2 == 0 {
                even_a[j] += term;
            }
            power = power * w_inv;
        }
        let mut power = Quaternion::one();
        for (j, slot) in sum_b.iter_mut().enumerate() {
            let term = value * power * dgamma;
            *slot += term;
            if k % 2 == 0 {
                even_b[j] += term;
            }
            power = power * w;
        }
    }
    let prefactor = axis.scale(-dt / T::TAU());
    let coarse = axis.scale(-(dt + dt) / T::TAU());
    let finish = |full: &[Quaternion<T>], half: &[Quaternion<T>]| -> (Vec<Quaternion<T>>, Vec<T>) {
        full.iter()
            .zip(half)
            .map(|(s, h)| {
                let c = prefactor * *s;
                (c, c.distance(coarse * *h))
            })
            .unzip()
    };
    let (a, mut err) = finish(&sum_a, &even_a);
    let (b, err_b) = finish(&sum_b, &even_b);
    err.extend(err_b);
    Ok(Expansion {
        data: LaurentData {
            center: p0,
            axis,
            radius: r,
            a,
            b,
            err,
        },
        max_abs,
    })
}

/// `a₀ … a_N` of the Taylor expansion at `p0`, sampled on the circle of radius `r`.
pub fn taylor_coeffs<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    r: T,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<LaurentData<T>> {
    taylor_coeffs_in(f, p0, None, r, n, cfg)
}

/// [`taylor_coeffs`] with an explicit axis, needed at real centers.
pub fn taylor_coeffs_in<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    axis: Option<Quaternion<T>>,
    r: T,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<LaurentData<T>> {
    let axis = expansion_axis(p0, axis)?;
    Ok(expand(f, p0, axis, r, n, false, cfg)?.data)
}

/// `f⁽ⁿ⁾(p₀) = n!·aₙ`.
pub fn derivative_via_cauchy<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    n: usize,
    r: T,
    cfg: &QuadratureConfig,
) -> Result<Quaternion<T>> {
    let data = taylor_coeffs(f, p0, r, n, cfg)?;
    let factorial = (1..=n).fold(T::one(), |acc, k| acc * T::from_count(k));
    Ok(data.a[n].scale(factorial))
}

/// `a₀ … a_N` and `b₁ … b_N` from one circle of radius `r` around `p0`.
pub fn laurent_coeffs<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    r: T,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<LaurentData<T>> {
    laurent_coeffs_in(f, p0, None, r, n, cfg)
}

/// [`laurent_coeffs`] with an explicit axis, needed at real centers.
pub fn laurent_coeffs_in<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    axis: Option<Quaternion<T>>,
    r: T,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<LaurentData<T>> {
    let axis = expansion_axis(p0, axis)?;
    Ok(expand(f, p0, axis, r, n, true, cfg)?.data)
}

/// `Res(f, p₀) = b₁`.
pub fn residue<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    r: T,
    cfg: &QuadratureConfig,
) -> Result<Quaternion<T>> {
    residue_in(f, p0, None, r, cfg)
}

pub fn residue_in<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    axis: Option<Quaternion<T>>,
    r: T,
    cfg: &QuadratureConfig,
) -> Result<Quaternion<T>> {
    Ok(laurent_coeffs_in(f, p0, axis, r, 1, cfg)?.b[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    /// `f` is defined at the point and has no principal part.
    RegularPoint,
    Removable,
    Pole(usize),
    Essential,
}

impl std::fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityKind::RegularPoint => f.write_str("regular-point"),
            SingularityKind::Removable => f.write_str("removable"),
            SingularityKind::Pole(m) => write!(f, "pole({m})"),
            SingularityKind::Essential => f.write_str("essential"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityClass<T> {
    pub kind: SingularityKind,
    pub radius: T,
    /// `|bₙ|·r⁻ⁿ` for `n = 1 … N_max`, the size of each principal term on the circle.
    pub evidence: Vec<T>,
    /// Modes above this are significant.
    pub threshold: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions<T> {
    pub radius: T,
    pub n_max: usize,
    pub axis: Option<Quaternion<T>>,
}

impl<T: Scalar> Default for ClassifyOptions<T> {
    fn default() -> Self {
        Self {
            radius: T::lit(CLASSIFY_RADIUS),
            n_max: CLASSIFY_N_MAX,
            axis: None,
        }
    }
}

fn classify_at<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    axis: Quaternion<T>,
    r: T,
    n_max: usize,
    defined_at_center: bool,
    cfg: &QuadratureConfig,
) -> Result<SingularityClass<T>> {
    let Expansion { data, max_abs } = expand(f, p0, axis, r, n_max, true, cfg)?;
    let threshold = T::lit(CLASSIFY_THRESHOLD) * max_abs;
    let evidence: Vec<T> = data
        .b
        .iter()
        .enumerate()
        .map(|(j, b)| b.norm() * r.powi(-(j as i32 + 1)))
        .collect();
    let highest = evidence.iter().rposition(|m| *m > threshold).map(|j| j + 1);
    // odd or even principal parts leave every other mode empty, so the last
    // two indices both count as reaching the cutoff
    let kind = match highest {
        None if defined_at_center => SingularityKind::RegularPoint,
        None => SingularityKind::Removable,
        Some(m) if m + 1 >= n_max => SingularityKind::Essential,
        Some(m) => SingularityKind::Pole(m),
    };
    Ok(SingularityClass {
        kind,
        radius: r,
        evidence,
        threshold,
    })
}

/// Classifies `p0` with the default options.
pub fn classify_singularity<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    cfg: &QuadratureConfig,
) -> Result<SingularityClass<T>> {
    classify_singularity_with(f, p0, &ClassifyOptions::default(), cfg)
}

/// Reads the principal part off the circle of radius `r` and again at `r/2`;
/// the two readings must agree. An index reaching `n_max` is taken as essential,
/// a heuristic that cannot separate essential points from very high-order poles.
pub fn classify_singularity_with<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p0: Quaternion<T>,
    opts: &ClassifyOptions<T>,
    cfg: &QuadratureConfig,
) -> Result<SingularityClass<T>> {
    let axis = expansion_axis(p0, opts.axis)?;
    let defined = matches!(f.eval(p0), Ok(v) if v.is_finite());
    let n_max = opts.n_max.max(2);
    let first = classify_at(f, p0, axis, opts.radius, n_max, defined, cfg)?;
    let half = opts.radius * T::lit(0.5);
    let second = classify_at(f, p0, axis, half, n_max, defined, cfg)?;
    if first.kind != second.kind {
        return Err(Error::Inconclusive {
            r1: opts.radius.as_f64(),
            first: first.kind.to_string(),
            r2: half.as_f64(),
            second: second.kind.to_string(),
        });
    }
    Ok(first)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueTheoremReport<T> {
    pub integral: IntegralResult<T>,
    /// `2π·axis·Σ ωⱼ·Res(f, pⱼ)`.
    pub rhs: Quaternion<T>,
    pub residual: T,
    pub axis: Quaternion<T>,
    pub residues: Vec<Quaternion<T>>,
    pub windings: Vec<i64>,
}

/// Compares `∮_γ f dp` with `2π·axis·Σ ωⱼ Res(f, pⱼ)` on a simple closed slice loop.
///
/// Every listed pole must be enclosed once (`ω = ±1`). Residues use circles of
/// radius `0.4 ×` the distance to the nearest other pole or to the loop.
pub fn residue_theorem_check<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    path: &Path<T>,
    poles: &[Quaternion<T>],
    cfg: &QuadratureConfig,
) -> Result<ResidueTheoremReport<T>> {
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    let samples = path.dense_samples(256);
    let mut cloud = samples.clone();
    cloud.extend_from_slice(poles);
    let plane = fit_slice_plane(&cloud, path.start_point())?;
    let axis = plane.axis;

    let mut windings = Vec::with_capacity(poles.len());
    let mut residues = Vec::with_capacity(poles.len());
    let mut sum = Quaternion::zero();
    for (index, pole) in poles.iter().enumerate() {
        let local = SlicePlane { origin: *pole, axis };
        let winding = match winding_number_in(path, *pole, &local) {
            Err(Error::PointOnPath { .. }) => return Err(Error::PoleOnPath),
            other => other?,
        };
        match winding {
            0 => return Err(Error::PoleOutside { index }),
            1 | -1 => {}
            _ => return Err(Error::NotSimpleLoop { index, winding }),
        }
        let to_loop = samples.iter().fold(T::infinity(), |m, q| m.min(q.distance(*pole)));
        let to_pole = poles
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != index)
            .fold(T::infinity(), |m, (_, q)| m.min(q.distance(*pole)));
        let r = T::lit(0.4) * to_loop.min(to_pole);
        let res = residue_in(f, *pole, Some(axis), r, cfg)?;
        sum += res.scale(T::from_i64(winding).unwrap_or_else(T::one));
        windings.push(winding);
        residues.push(res);
    }
    let integral = match contour_integral(f, path, cfg) {
        Err(Error::SingularOnPath { .. }) => return Err(Error::PoleOnPath),
        other => other?,
    };
    let rhs = axis.scale(T::TAU()) * sum;
    Ok(ResidueTheoremReport {
        residual: integral.value.distance(rhs),
        integral,
        rhs,
        axis,
        residues,
        windings,
    })
}
