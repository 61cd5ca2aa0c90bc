//! Quaternion arithmetic, the Cayley–Dickson doubling form and the polar form.
//!
//! A quaternion is `p = x + y i + z j + u k`. Writing `a = x + y i` and
//! `b = z + u i` gives the doubling form `p = a + b j`, which is how the
//! calculus module splits function values into the complex constituents
//! `Φ₁` and `Φ₂`.
//!
//! Arithmetic (`+`, `-`, `*`, conjugation, exact inverse) only needs a ring
//! with division, so it also works over exact rationals. Norms, the imaginary
//! unit and the polar form need a [`Scalar`].

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Num;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Floor on `|Im p|` below which the imaginary unit is treated as undefined.
pub const DEFAULT_V_MIN: f64 = 1e-12;

/// Tolerance used when validating that an axis is a unit pure-imaginary quaternion.
const AXIS_TOL: f64 = 1e-9;

/// A quaternion `x + y i + z j + u k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Quaternion<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub u: T,
}

impl<T> Quaternion<T> {
    pub const fn new(x: T, y: T, z: T, u: T) -> Self {
        Self { x, y, z, u }
    }
}

impl<T: Copy + Num + Neg<Output = T>> Quaternion<T> {
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn from_real(x: T) -> Self {
        Self::new(x, T::zero(), T::zero(), T::zero())
    }

    /// Real part `x`.
    pub fn re(self) -> T {
        self.x
    }

    /// Pure-imaginary part `y i + z j + u k`.
    pub fn im(self) -> Self {
        Self::new(T::zero(), self.y, self.z, self.u)
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero() && self.u.is_zero()
    }

    /// Quaternion conjugate `x - y i - z j - u k`.
    pub fn conj(self) -> Self {
        Self::new(self.x, -self.y, -self.z, -self.u)
    }

    /// `|p|² = x² + y² + z² + u²`.
    pub fn norm_sqr(self) -> T {
        self.x * self.x + self.y * self.y + self.z * self.z + self.u * self.u
    }

    /// Euclidean inner product of the four components.
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z + self.u * other.u
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s, self.u * s)
    }

    pub fn unscale(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s, self.u / s)
    }

    /// `p⁻¹ = p̄ / |p|²`, exact whenever `T` is.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().unscale(n2))
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn powi(self, n: i32) -> Result<Self> {
        let mut base = if n < 0 { self.inverse()? } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Commutator `pq - qp`.
    pub fn commutator(self, other: Self) -> Self {
        self * other - other * self
    }
}

impl<T: Scalar> Quaternion<T> {
    /// Builds a quaternion, rejecting NaN and infinite components.
    pub fn try_new(x: T, y: T, z: T, u: T) -> Result<Self> {
        let q = Self::new(x, y, z, u);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.u.is_finite()
    }

    /// `|p|`, computed with scaling to avoid premature overflow.
    pub fn norm(self) -> T {
        let m = self
            .x
            .abs()
            .max(self.y.abs())
            .max(self.z.abs())
            .max(self.u.abs());
        if m.is_zero() || !m.is_finite() {
            return m;
        }
        self.unscale(m).norm_sqr().sqrt() * m
    }

    /// `v = √(y² + z² + u²)`, the length of the imaginary part.
    pub fn imag_norm(self) -> T {
        self.im().norm()
    }

    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    /// Returns `p / |p|`, or `None` for zero.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero()).then(|| self.unscale(n))
    }

    /// True when the real part vanishes and `|p| = 1` within `1e-9`.
    pub fn is_unit_imaginary(self) -> bool {
        let tol = T::lit(AXIS_TOL);
        self.x.abs() <= tol && (self.norm() - T::one()).abs() <= tol
    }

    /// Quaternionic imaginary unit `I = (y i + z j + u k)/v` using [`DEFAULT_V_MIN`].
    pub fn imaginary_unit(self) -> Result<Self> {
        self.imaginary_unit_with(T::lit(DEFAULT_V_MIN))
    }

    /// Quaternionic imaginary unit with an explicit floor on `v`.
    pub fn imaginary_unit_with(self, v_min: T) -> Result<Self> {
        let v = self.imag_norm();
        if v <= v_min {
            return Err(Error::OnRealAxis { v: v.as_f64() });
        }
        Ok(self.im().unscale(v))
    }

    /// Polar form `p = m (cos θ + I sin θ)` with `θ ∈ [0, π]`.
    pub fn polar(self) -> Result<PolarForm<T>> {
        let m = self.norm();
        if m.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        let v = self.imag_norm();
        let theta = v.atan2(self.x);
        let axis = self.imaginary_unit().ok();
        Ok(PolarForm { m, theta, axis })
    }

    /// `exp(axis · t) = cos t + axis sin t` for a unit pure-imaginary axis.
    pub fn axis_exp(axis: Self, t: T) -> Self {
        Self::from_real(t.cos()) + axis.scale(t.sin())
    }

    /// Converts every component to another scalar type.
    pub fn cast<S: Scalar>(self) -> Quaternion<S> {
        let c = |v: T| S::lit(v.as_f64());
        Quaternion::new(c(self.x), c(self.y), c(self.z), c(self.u))
    }
}

/// `x + v · axis` for a unit pure-imaginary `axis`.
pub fn embed<T: Scalar>(x: T, v: T, axis: Quaternion<T>) -> Result<Quaternion<T>> {
    if !axis.is_unit_imaginary() {
        return Err(Error::NotUnitImaginary);
    }
    Ok(Quaternion::from_real(x) + axis.scale(v))
}

impl<T: Copy + Num + Neg<Output = T>> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z, self.u + o.u)
    }
}

impl<T: Copy + Num + Neg<Output = T>> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z, self.u - o.u)
    }
}

impl<T: Copy + Num + Neg<Output = T>> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z, -self.u)
    }
}

/// Hamilton product.
impl<T: Copy + Num + Neg<Output = T>> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (x1, y1, z1, u1) = (self.x, self.y, self.z, self.u);
        let (x2, y2, z2, u2) = (o.x, o.y, o.z, o.u);
        Self::new(
            x1 * x2 - y1 * y2 - z1 * z2 - u1 * u2,
            x1 * y2 + y1 * x2 + z1 * u2 - u1 * z2,
            x1 * z2 - y1 * u2 + z1 * x2 + u1 * y2,
            x1 * u2 + y1 * z2 - z1 * y2 + u1 * x2,
        )
    }
}

impl<T: Copy + Num + Neg<Output = T>> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Copy + Num + Neg<Output = T>> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Copy + Num + Neg<Output = T>> Sum for Quaternion<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, q| acc + q)
    }
}

/// Cayley–Dickson doubling form `p = a + b j` with `a = x + y i`, `b = z + u i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoublingForm<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
}

impl<T: Copy + Num + Neg<Output = T>> DoublingForm<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Self {
        Self { a, b }
    }

    /// `(a₁ + b₁ j)(a₂ + b₂ j) = (a₁a₂ − b₁b̄₂) + (a₁b₂ + b₁ā₂) j`.
    pub fn mul(self, o: Self) -> Self {
        Self {
            a: self.a * o.a - self.b * o.b.conj(),
            b: self.a * o.b + self.b * o.a.conj(),
        }
    }

    /// `p̄ = ā − b j`.
    pub fn conj(self) -> Self {
        Self {
            a: self.a.conj(),
            b: -self.b,
        }
    }
}

impl<T: Copy> From<Quaternion<T>> for DoublingForm<T> {
    fn from(q: Quaternion<T>) -> Self {
        Self {
            a: Complex::new(q.x, q.y),
            b: Complex::new(q.z, q.u),
        }
    }
}

impl<T: Copy> From<DoublingForm<T>> for Quaternion<T> {
    fn from(d: DoublingForm<T>) -> Self {
        Quaternion::new(d.a.re, d.a.im, d.b.re, d.b.im)
    }
}

/// `p = m (cos θ + I sin θ)`.
///
/// `axis` is `None` on the real axis, where `I` is arbitrary; callers must not
/// read a default axis out of that case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarForm<T> {
    pub m: T,
    pub theta: T,
    pub axis: Option<Quaternion<T>>,
}

impl<T: Scalar> PolarForm<T> {
    pub fn axis_is_arbitrary(&self) -> bool {
        self.axis.is_none()
    }

    /// `v = m sin θ`.
    pub fn imag_len(&self) -> T {
        self.m * self.theta.sin()
    }

    pub fn to_quaternion(&self) -> Quaternion<T> {
        let re = self.m * self.theta.cos();
        match self.axis {
            Some(axis) => Quaternion::from_real(re) + axis.scale(self.imag_len()),
            None => Quaternion::from_real(re),
        }
    }
}

/// Formats a value with 12 significant digits, dropping trailing zeros.
pub(crate) fn fmt_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    let s = format!("{rounded}");
    if s.len() > 20 {
        format!("{rounded:e}")
    } else {
        s
    }
}

/// Prints `x+yi+zj+uk` with 12 significant digits.
impl<T: Scalar> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_sig(self.x.as_f64()))?;
        for (val, unit) in [(self.y, 'i'), (self.z, 'j'), (self.u, 'k')] {
            let s = fmt_sig(val.as_f64());
            if s.starts_with('-') {
                write!(f, "{s}{unit}")?;
            } else {
                write!(f, "+{s}{unit}")?;
            }
        }
        Ok(())
    }
}

/// Parses the literal format `x±yi±zj±uk`; any subset of terms, e.g. `1+2i-0.5j`, `j`, `-3`.
impl<T: Scalar> FromStr for Quaternion<T> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let [x, y, z, u] = parse_literal(text)?;
        Self::try_new(T::lit(x), T::lit(y), T::lit(z), T::lit(u)).map_err(|_| {
            Error::InvalidLiteral {
                text: text.into(),
                reason: "component out of range".into(),
            }
        })
    }
}

fn parse_literal(text: &str) -> Result<[f64; 4]> {
    let bad = |reason: &str| Error::InvalidLiteral {
        text: text.into(),
        reason: reason.into(),
    };
    let s: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty literal"));
    }
    let mut parts = [0.0f64; 4];
    let mut seen = [false; 4];
    let mut pos = 0;
    while pos < s.len() {
        let mut sign = 1.0;
        match s[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -1.0;
                pos += 1
            }
            _ if pos > 0 => return Err(bad("expected '+' or '-' between terms")),
            _ => {}
        }
        let start = pos;
        while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == b'.') {
            pos += 1;
        }
        if pos > start && pos < s.len() && (s[pos] == b'e' || s[pos] == b'E') {
            let mut look = pos + 1;
            if look < s.len() && (s[look] == b'+' || s[look] == b'-') {
                look += 1;
            }
            if look < s.len() && s[look].is_ascii_digit() {
                pos = look;
                while pos < s.len() && s[pos].is_ascii_digit() {
                    pos += 1;
                }
            }
        }
        let magnitude = if pos > start {
            std::str::from_utf8(&s[start..pos])
                .ok()
                .and_then(|n| n.parse::<f64>().ok())
                .ok_or_else(|| bad("malformed number"))?
        } else {
            1.0
        };
        let slot = match s.get(pos) {
            Some(b'i') => 1,
            Some(b'j') => 2,
            Some(b'k') => 3,
            Some(b'+') | Some(b'-') | None if pos > start => 0,
            _ => return Err(bad("expected a number or one of i, j, k")),
        };
        if slot > 0 {
            pos += 1;
        }
        if seen[slot] {
            return Err(bad("repeated component"));
        }
        seen[slot] = true;
        parts[slot] = sign * magnitude;
        if !parts[slot].is_finite() {
            return Err(bad("component out of range"));
        }
    }
    Ok(parts)
}

/// Accepts either the object form `{"x":…,"y":…,"z":…,"u":…}` or a literal string.
impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Quaternion<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr<T> {
            Object {
                #[serde(default)]
                x: Option<T>,
                #[serde(default)]
                y: Option<T>,
                #[serde(default)]
                z: Option<T>,
                #[serde(default)]
                u: Option<T>,
            },
            Text(String),
        }
        match Repr::<T>::deserialize(deserializer)? {
            Repr::Object { x, y, z, u } => {
                let c = |v: Option<T>| v.unwrap_or_else(T::zero);
                Quaternion::try_new(c(x), c(y), c(z), c(u)).map_err(serde::de::Error::custom)
            }
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
