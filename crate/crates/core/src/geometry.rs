//! Paths in quaternion space, slice planes, winding numbers and arc length.
//!
//! A path is a parametrized curve `γ : [α, β] → H`. Circles live in one slice
//! plane: `γ(t) = center + r·exp(±axis·t)` for `t ∈ [0, 2π]`, with the axis
//! treated as a constant along the curve.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// Tolerance for endpoint chaining and closedness.
const CHAIN_TOL: f64 = 1e-9;
/// Relative residual allowed when fitting a slice plane.
const PLANE_TOL: f64 = 1e-9;
/// Allowed distance of the winding total from an integer number of turns.
const ROUNDING_TOL: f64 = 0.01;

pub type ParamFn<T> = Arc<dyn Fn(T) -> Quaternion<T> + Send + Sync>;

/// Direction of travel around a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Orientation::Positive => T::one(),
            Orientation::Negative => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

#[derive(Clone)]
pub enum Path<T> {
    Circle {
        center: Quaternion<T>,
        radius: T,
        axis: Quaternion<T>,
        orientation: Orientation,
    },
    Segment {
        start: Quaternion<T>,
        end: Quaternion<T>,
    },
    Parametric {
        gamma: ParamFn<T>,
        velocity: Option<ParamFn<T>>,
        start: T,
        end: T,
    },
    Reversed(Box<Path<T>>),
    Concat(Vec<Path<T>>),
}

impl<T: Scalar> fmt::Debug for Path<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Circle {
                center,
                radius,
                axis,
                orientation,
            } => f
                .debug_struct("Circle")
                .field("center", center)
                .field("radius", radius)
                .field("axis", axis)
                .field("orientation", orientation)
                .finish(),
            Path::Segment { start, end } => f
                .debug_struct("Segment")
                .field("start", start)
                .field("end", end)
                .finish(),
            Path::Parametric {
                velocity,
                start,
                end,
                ..
            } => f
                .debug_struct("Parametric")
                .field("has_velocity", &velocity.is_some())
                .field("start", start)
                .field("end", end)
                .finish(),
            Path::Reversed(inner) => f.debug_tuple("Reversed").field(inner).finish(),
            Path::Concat(parts) => f.debug_tuple("Concat").field(parts).finish(),
        }
    }
}

impl<T: Scalar> Path<T> {
    /// H-circle `center + radius·exp(±axis·t)`.
    pub fn circle(
        center: Quaternion<T>,
        radius: T,
        axis: Quaternion<T>,
        orientation: Orientation,
    ) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidPathSpec {
                spec: "circle".into(),
                reason: "radius must be positive".into(),
            });
        }
        if !axis.is_unit_imaginary() {
            return Err(Error::NotUnitImaginary);
        }
        Ok(Path::Circle {
            center,
            radius,
            axis,
            orientation,
        })
    }

    pub fn segment(start: Quaternion<T>, end: Quaternion<T>) -> Self {
        Path::Segment { start, end }
    }

    /// Curve from a closure; without `velocity` the derivative is taken by
    /// central differences, which may evaluate `gamma` slightly outside `[start, end]`.
    pub fn parametric(
        gamma: impl Fn(T) -> Quaternion<T> + Send + Sync + 'static,
        velocity: Option<ParamFn<T>>,
        start: T,
        end: T,
    ) -> Result<Self> {
        if !(start < end) {
            return Err(Error::InvalidPathSpec {
                spec: "parametric".into(),
                reason: "interval must satisfy start < end".into(),
            });
        }
        Ok(Path::Parametric {
            gamma: Arc::new(gamma),
            velocity,
            start,
            end,
        })
    }

    /// `−γ(t) = γ(α + β − t)`.
    pub fn reverse(self) -> Self {
        match self {
            Path::Reversed(inner) => *inner,
            other => Path::Reversed(Box::new(other)),
        }
    }

    /// Joins parts end to start; each end must meet the next start within `1e-9`.
    pub fn concat(parts: Vec<Path<T>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPathSpec {
                spec: "concat".into(),
                reason: "no parts".into(),
            });
        }
        for (index, pair) in parts.windows(2).enumerate() {
            let end = pair[0].end_point();
            let gap = end.distance(pair[1].start_point());
            if gap > T::lit(CHAIN_TOL) * T::one().max(end.norm()) {
                return Err(Error::ChainBreak {
                    index,
                    gap: gap.as_f64(),
                });
            }
        }
        Ok(Path::Concat(parts))
    }

    /// Parameter interval `[α, β]`.
    pub fn interval(&self) -> (T, T) {
        match self {
            Path::Circle { .. } => (T::zero(), T::TAU()),
            Path::Segment { .. } => (T::zero(), T::one()),
            Path::Parametric { start, end, .. } => (*start, *end),
            Path::Reversed(inner) => inner.interval(),
            Path::Concat(parts) => (T::zero(), T::from_count(parts.len())),
        }
    }

    fn check_t(&self, t: T) -> Result<T> {
        let (a, b) = self.interval();
        let slack = T::lit(1e-12) * T::one().max(b - a);
        if !(t >= a - slack && t <= b + slack) {
            return Err(Error::OutOfInterval {
                t: t.as_f64(),
                start: a.as_f64(),
                end: b.as_f64(),
            });
        }
        Ok(t.max(a).min(b))
    }

    /// Maps a concatenation parameter to `(part, local parameter, d local / d t)`.
    fn locate(parts: &[Path<T>], t: T) -> (&Path<T>, T, T) {
        let n = parts.len();
        let idx = t.floor().to_usize().unwrap_or(0).min(n - 1);
        let part = &parts[idx];
        let (a, b) = part.interval();
        let s = t - T::from_count(idx);
        (part, a + s * (b - a), b - a)
    }

    /// `γ(t)`.
    pub fn sample(&self, t: T) -> Result<Quaternion<T>> {
        let t = self.check_t(t)?;
        Ok(self.point_unchecked(t))
    }

    fn point_unchecked(&self, t: T) -> Quaternion<T> {
        match self {
            Path::Circle {
                center,
                radius,
                axis,
                orientation,
            } => *center + Quaternion::axis_exp(*axis, orientation.sign::<T>() * t).scale(*radius),
            Path::Segment { start, end } => *start + (*end - *start).scale(t),
            Path::Parametric { gamma, .. } => gamma(t),
            Path::Reversed(inner) => {
                let (a, b) = inner.interval();
                inner.point_unchecked(a + b - t)
            }
            Path::Concat(parts) => {
                let (part, s, _) = Self::locate(parts, t);
                part.point_unchecked(s)
            }
        }
    }

    /// `γ′(t)`.
    pub fn velocity(&self, t: T) -> Result<Quaternion<T>> {
        let t = self.check_t(t)?;
        Ok(self.velocity_unchecked(t))
    }

    fn velocity_unchecked(&self, t: T) -> Quaternion<T> {
        match self {
            Path::Circle {
                radius,
                axis,
                orientation,
                ..
            } => {
                let sign = orientation.sign::<T>();
                (*axis * Quaternion::axis_exp(*axis, sign * t)).scale(*radius * sign)
            }
            Path::Segment { start, end } => *end - *start,
            Path::Parametric {
                gamma, velocity, ..
            } => match velocity {
                Some(v) => v(t),
                None => {
                    let h = T::epsilon().cbrt() * T::one().max(t.abs());
                    (gamma(t + h) - gamma(t - h)).unscale(h + h)
                }
            },
            Path::Reversed(inner) => {
                let (a, b) = inner.interval();
                -inner.velocity_unchecked(a + b - t)
            }
            Path::Concat(parts) => {
                let (part, s, rate) = Self::locate(parts, t);
                part.velocity_unchecked(s).scale(rate)
            }
        }
    }

    pub fn start_point(&self) -> Quaternion<T> {
        self.point_unchecked(self.interval().0)
    }

    pub fn end_point(&self) -> Quaternion<T> {
        self.point_unchecked(self.interval().1)
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Path::Circle { .. } => true,
            Path::Reversed(inner) => inner.is_closed(),
            _ => {
                let a = self.start_point();
                a.distance(self.end_point()) <= T::lit(CHAIN_TOL) * T::one().max(a.norm())
            }
        }
    }

    /// The path shifted by `q`.
    pub fn translated(&self, q: Quaternion<T>) -> Self {
        match self {
            Path::Circle {
                center,
                radius,
                axis,
                orientation,
            } => Path::Circle {
                center: *center + q,
                radius: *radius,
                axis: *axis,
                orientation: *orientation,
            },
            Path::Segment { start, end } => Path::Segment {
                start: *start + q,
                end: *end + q,
            },
            Path::Parametric {
                gamma,
                velocity,
                start,
                end,
            } => {
                let g = gamma.clone();
                Path::Parametric {
                    gamma: Arc::new(move |t| g(t) + q),
                    velocity: velocity.clone(),
                    start: *start,
                    end: *end,
                }
            }
            Path::Reversed(inner) => Path::Reversed(Box::new(inner.translated(q))),
            Path::Concat(parts) => Path::Concat(parts.iter().map(|p| p.translated(q)).collect()),
        }
    }

    /// Smooth pieces in traversal order; each is a circle, segment or
    /// parametric curve, possibly wrapped once in `Reversed`.
    pub fn smooth_pieces(&self) -> Vec<Path<T>> {
        match self {
            Path::Concat(parts) => parts.iter().flat_map(|p| p.smooth_pieces()).collect(),
            Path::Reversed(inner) => match inner.as_ref() {
                Path::Concat(_) | Path::Reversed(_) => inner
                    .smooth_pieces()
                    .into_iter()
                    .rev()
                    .map(Path::reverse)
                    .collect(),
                _ => vec![self.clone()],
            },
            _ => vec![self.clone()],
        }
    }

    /// True for a full circle, reversed or not, whose integrands are periodic.
    pub fn is_periodic_circle(&self) -> bool {
        match self {
            Path::Circle { .. } => true,
            Path::Reversed(inner) => inner.is_periodic_circle(),
            _ => false,
        }
    }

    /// `∫ |γ′(t)| dt`; exact for circles and segments, adaptive Simpson otherwise.
    pub fn length(&self) -> T {
        match self {
            Path::Circle { radius, .. } => T::TAU() * *radius,
            Path::Segment { start, end } => start.distance(*end),
            Path::Parametric { start, end, .. } => {
                let speed = |t: T| self.velocity_unchecked(t).norm();
                adaptive_simpson(&speed, *start, *end, T::lit(1e-12))
            }
            Path::Reversed(inner) => inner.length(),
            Path::Concat(parts) => parts.iter().map(Path::length).fold(T::zero(), |a, b| a + b),
        }
    }

    /// `n + 1` equally spaced samples per smooth piece, endpoints included.
    pub fn dense_samples(&self, n: usize) -> Vec<Quaternion<T>> {
        let mut out = Vec::new();
        for piece in self.smooth_pieces() {
            let (a, b) = piece.interval();
            for k in 0..=n {
                let t = a + (b - a) * T::from_count(k) / T::from_count(n);
                out.push(piece.point_unchecked(t));
            }
        }
        out
    }
}

/// Affine plane `{origin + x + v·axis}` containing the real direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePlane<T> {
    pub origin: Quaternion<T>,
    pub axis: Quaternion<T>,
}

impl<T: Scalar> SlicePlane<T> {
    pub fn new(origin: Quaternion<T>, axis: Quaternion<T>) -> Result<Self> {
        if !axis.is_unit_imaginary() {
            return Err(Error::NotUnitImaginary);
        }
        Ok(Self { origin, axis })
    }

    /// In-plane coordinates `(x, v)` of `q` relative to the origin.
    pub fn coords(&self, q: Quaternion<T>) -> (T, T) {
        let d = q - self.origin;
        (d.x, d.im().dot(self.axis))
    }

    /// Distance of `q` from the plane.
    pub fn offset(&self, q: Quaternion<T>) -> T {
        let w = (q - self.origin).im();
        (w - self.axis.scale(w.dot(self.axis))).norm()
    }

    pub fn point(&self, x: T, v: T) -> Quaternion<T> {
        self.origin + Quaternion::from_real(x) + self.axis.scale(v)
    }
}

/// Flips `axis` so that its first non-negligible imaginary component is positive.
pub fn canonical_axis<T: Scalar>(axis: Quaternion<T>) -> Quaternion<T> {
    let tiny = T::lit(1e-12);
    for c in [axis.y, axis.z, axis.u] {
        if c.abs() > tiny {
            return if c < T::zero() { -axis } else { axis };
        }
    }
    axis
}

/// Least-squares slice plane through `anchor` for a point cloud: the dominant
/// direction of the imaginary offsets, canonically signed.
pub fn fit_slice_plane<T: Scalar>(
    points: &[Quaternion<T>],
    anchor: Quaternion<T>,
) -> Result<SlicePlane<T>> {
    let offsets: Vec<[T; 3]> = points
        .iter()
        .map(|q| {
            let w = (*q - anchor).im();
            [w.y, w.z, w.u]
        })
        .collect();
    let mut scatter = [[T::zero(); 3]; 3];
    let mut largest = (T::zero(), [T::zero(); 3]);
    for w in &offsets {
        for r in 0..3 {
            for c in 0..3 {
                scatter[r][c] += w[r] * w[c];
            }
        }
        let n2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        if n2 > largest.0 {
            largest = (n2, *w);
        }
    }
    let max_norm = largest.0.sqrt();
    let scale = T::one().max(max_norm);
    if max_norm <= T::lit(PLANE_TOL) * scale {
        // every point sits on the real line through the anchor
        return Err(Error::NotSlicePlanar { residual: 0.0 });
    }
    let mut dir = largest.1.map(|c| c / max_norm);
    for _ in 0..200 {
        let mut next = [T::zero(); 3];
        for r in 0..3 {
            next[r] = scatter[r][0] * dir[0] + scatter[r][1] * dir[1] + scatter[r][2] * dir[2];
        }
        let n = (next[0] * next[0] + next[1] * next[1] + next[2] * next[2]).sqrt();
        let next = next.map(|c| c / n);
        let change = (0..3).fold(T::zero(), |m, i| m.max((next[i] - dir[i]).abs()));
        dir = next;
        if change < T::epsilon() {
            break;
        }
    }
    let axis = canonical_axis(Quaternion::new(T::zero(), dir[0], dir[1], dir[2]));
    let plane = SlicePlane {
        origin: anchor,
        axis,
    };
    let residual = points
        .iter()
        .fold(T::zero(), |m, q| m.max(plane.offset(*q)));
    if residual > T::lit(PLANE_TOL) * scale {
        return Err(Error::NotSlicePlanar {
            residual: residual.as_f64(),
        });
    }
    Ok(plane)
}

/// Slice plane shared by a closed path and a point.
pub fn slice_plane<T: Scalar>(path: &Path<T>, p0: Quaternion<T>) -> Result<SlicePlane<T>> {
    fit_slice_plane(&path.dense_samples(64), p0)
}

/// Winding number `ω(γ, p₀)` of a closed slice-planar path, measured against the
/// canonically signed axis of the plane (see [`canonical_axis`]).
pub fn winding_number<T: Scalar>(path: &Path<T>, p0: Quaternion<T>) -> Result<i64> {
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    let plane = slice_plane(path, p0)?;
    winding_number_in(path, p0, &plane)
}

/// Winding number measured in a given plane, whose axis fixes the positive sense.
pub fn winding_number_in<T: Scalar>(
    path: &Path<T>,
    p0: Quaternion<T>,
    plane: &SlicePlane<T>,
) -> Result<i64> {
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    let mut n = 256;
    let mut last_turns = f64::NAN;
    while n <= 1 << 16 {
        let samples = path.dense_samples(n);
        let extent = samples.iter().fold(T::zero(), |m, q| m.max(q.distance(p0)));
        let scale = T::one().max(extent);
        let tol = T::lit(PLANE_TOL) * scale;
        let mut residual = plane.offset(p0);
        let mut nearest = T::infinity();
        let mut total = T::zero();
        let mut worst_step = T::zero();
        let mut prev: Option<T> = None;
        for q in &samples {
            residual = residual.max(plane.offset(*q));
            let (x0, v0) = plane.coords(p0);
            let (x, v) = plane.coords(*q);
            let (dx, dv) = (x - x0, v - v0);
            nearest = nearest.min((dx * dx + dv * dv).sqrt());
            let angle = dv.atan2(dx);
            if let Some(before) = prev {
                let mut step = angle - before;
                if step > T::PI() {
                    step -= T::TAU();
                } else if step < -T::PI() {
                    step += T::TAU();
                }
                worst_step = worst_step.max(step.abs());
                total += step;
            }
            prev = Some(angle);
        }
        if residual > tol {
            return Err(Error::NotSlicePlanar {
                residual: residual.as_f64(),
            });
        }
        if nearest <= tol {
            return Err(Error::PointOnPath {
                distance: nearest.as_f64(),
            });
        }
        let turns = (total / T::TAU()).as_f64();
        last_turns = turns;
        if worst_step < T::FRAC_PI_8() {
            let rounded = turns.round();
            if (turns - rounded).abs() >= ROUNDING_TOL {
                return Err(Error::AngleAccumulationInconsistent { turns });
            }
            return Ok(rounded as i64);
        }
        n *= 2;
    }
    Err(Error::AngleAccumulationInconsistent { turns: last_turns })
}

fn spec_error(spec: &str, reason: impl Into<String>) -> Error {
    Error::InvalidPathSpec {
        spec: spec.into(),
        reason: reason.into(),
    }
}

/// Parses the path mini-language:
///
/// ```text
/// circle:center=<quat>;r=<real>;axis=<quat>;orient=+1|-1
/// segment:from=<quat>;to=<quat>
/// concat:<spec>|<spec>|…
/// reverse:<spec>
/// ```
///
/// `axis` defaults to `i` and is normalized if it is pure imaginary;
/// `orient` defaults to `+1`.
impl<T: Scalar> FromStr for Path<T> {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| spec_error(spec, "expected <kind>:<parameters>"))?;
        match kind.trim() {
            "concat" => {
                let parts = body
                    .split('|')
                    .map(str::parse)
                    .collect::<Result<Vec<Path<T>>>>()?;
                Path::concat(parts)
            }
            "reverse" => Ok(body.parse::<Path<T>>()?.reverse()),
            "circle" | "segment" => {
                let mut fields = std::collections::HashMap::new();
                for item in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (key, value) = item
                        .split_once('=')
                        .ok_or_else(|| spec_error(spec, format!("expected key=value, got {item:?}")))?;
                    if fields.insert(key.trim(), value.trim()).is_some() {
                        return Err(spec_error(spec, format!("duplicate key {key:?}")));
                    }
                }
                let quat = |key: &str| -> Result<Option<Quaternion<T>>> {
                    fields.get(key).map(|v| v.parse()).transpose()
                };
                let allowed: &[&str] = if kind.trim() == "circle" {
                    &["center", "r", "axis", "orient"]
                } else {
                    &["from", "to"]
                };
                if let Some(extra) = fields.keys().find(|k| !allowed.contains(k)) {
                    return Err(spec_error(spec, format!("unknown key {extra:?}")));
                }
                if kind.trim() == "segment" {
                    let from = quat("from")?.ok_or_else(|| spec_error(spec, "missing from="))?;
                    let to = quat("to")?.ok_or_else(|| spec_error(spec, "missing to="))?;
                    return Ok(Path::segment(from, to));
                }
                let center = quat("center")?.unwrap_or_else(Quaternion::zero);
                let radius: f64 = fields
                    .get("r")
                    .ok_or_else(|| spec_error(spec, "missing r="))?
                    .parse()
                    .map_err(|_| spec_error(spec, "r must be a real number"))?;
                let axis = quat("axis")?.unwrap_or_else(Quaternion::i);
                if !axis.x.is_zero() {
                    return Err(spec_error(spec, "axis must be pure imaginary"));
                }
                let axis = axis
                    .normalized()
                    .ok_or_else(|| spec_error(spec, "axis must be nonzero"))?;
                let orientation = match fields.get("orient").copied() {
                    None | Some("+1") | Some("1") => Orientation::Positive,
                    Some("-1") => Orientation::Negative,
                    Some(other) => return Err(spec_error(spec, format!("orient must be +1 or -1, got {other:?}"))),
                };
                Path::circle(center, T::lit(radius), axis, orientation)
                    .map_err(|e| spec_error(spec, e.to_string()))
            }
            other => Err(spec_error(spec, format!("unknown path kind {other:?}"))),
        }
    }
}
