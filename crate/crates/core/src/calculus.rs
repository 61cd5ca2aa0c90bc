//! Numerical Wirtinger partials of the doubling-form constituents, the
//! H-holomorphy test and the full quaternionic derivative.
//!
//! A value `ψ(p)` is split as `Φ₁ + Φ₂ j` with `Φ₁ = ψ₁ + ψ₂ i` and
//! `Φ₂ = ψ₃ + ψ₄ i`. Real-coordinate partials come from central differences
//! and are combined as
//!
//! ```text
//! ∂_a = ½(∂x − i∂y)   ∂_ā = ½(∂x + i∂y)   ∂_b = ½(∂z − i∂u)   ∂_b̄ = ½(∂z + i∂u)
//! ```
//!
//! Partials of a conjugated constituent follow from `∂_b̄ Φ̄ = conj(∂_b Φ)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::expr::{derivative, eval_quaternion, Expr};
use crate::function::QuaternionFn;
use crate::quat::{DoublingForm, Quaternion};
use crate::scalar::Scalar;

/// Highest order handled by finite differences.
pub const MAX_NUMERIC_ORDER: usize = 4;

/// Default step for a `k`-th order central difference: `ε^(1/(k+2)) · max(1, |p|)`.
pub fn default_step<T: Scalar>(p: Quaternion<T>, k: usize) -> T {
    let power = T::one() / T::from_count(k + 2);
    T::epsilon().powf(power) * T::one().max(p.norm())
}

/// The eight Wirtinger partials of `Φ₁`, `Φ₂` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialsReport<T> {
    pub point: Quaternion<T>,
    pub step: T,
    pub d_a_phi1: Complex<T>,
    pub d_abar_phi1: Complex<T>,
    pub d_b_phi1: Complex<T>,
    pub d_bbar_phi1: Complex<T>,
    pub d_a_phi2: Complex<T>,
    pub d_abar_phi2: Complex<T>,
    pub d_b_phi2: Complex<T>,
    pub d_bbar_phi2: Complex<T>,
}

impl<T: Scalar> PartialsReport<T> {
    /// `∂x ψ` rebuilt as `(∂_a + ∂_ā)Φ₁ + (∂_a + ∂_ā)Φ₂ j`.
    pub fn d_x(&self) -> Quaternion<T> {
        DoublingForm::new(
            self.d_a_phi1 + self.d_abar_phi1,
            self.d_a_phi2 + self.d_abar_phi2,
        )
        .into()
    }

    fn all(&self) -> [Complex<T>; 8] {
        [
            self.d_a_phi1,
            self.d_abar_phi1,
            self.d_b_phi1,
            self.d_bbar_phi1,
            self.d_a_phi2,
            self.d_abar_phi2,
            self.d_b_phi2,
            self.d_bbar_phi2,
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.all().iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest magnitude among the eight partials.
    pub fn max_norm(&self) -> T {
        self.all().iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }
}

fn central<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p: Quaternion<T>,
    dir: Quaternion<T>,
    h: T,
) -> Result<DoublingForm<T>> {
    let fwd = f.eval(p + dir.scale(h))?;
    let back = f.eval(p - dir.scale(h))?;
    Ok((fwd - back).unscale(h + h).into())
}

/// Wirtinger partials of `f` at `p` with step `h` (default [`default_step`]).
pub fn wirtinger_partials<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p: Quaternion<T>,
    h: Option<T>,
) -> Result<PartialsReport<T>> {
    let h = h.unwrap_or_else(|| default_step(p, 1));
    let dx = central(f, p, Quaternion::one(), h)?;
    let dy = central(f, p, Quaternion::i(), h)?;
    let dz = central(f, p, Quaternion::j(), h)?;
    let du = central(f, p, Quaternion::k(), h)?;
    let half = T::lit(0.5);
    let i = Complex::new(T::zero(), T::one());
    let minus = |d1: Complex<T>, d2: Complex<T>| (d1 - i * d2) * half;
    let plus = |d1: Complex<T>, d2: Complex<T>| (d1 + i * d2) * half;
    Ok(PartialsReport {
        point: p,
        step: h,
        d_a_phi1: minus(dx.a, dy.a),
        d_abar_phi1: plus(dx.a, dy.a),
        d_b_phi1: minus(dz.a, du.a),
        d_bbar_phi1: plus(dz.a, du.a),
        d_a_phi2: minus(dx.b, dy.b),
        d_abar_phi2: plus(dx.b, dy.b),
        d_b_phi2: minus(dz.b, du.b),
        d_bbar_phi2: plus(dz.b, du.b),
    })
}

/// Residuals of the four generalized Cauchy–Riemann conditions at a 3D point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolomorphyReport<T> {
    pub point: Quaternion<T>,
    /// `|∂_aΦ₁ − ∂_b̄Φ̄₂|`, `|∂_aΦ₂ + ∂_b̄Φ̄₁|`, `|∂_aΦ₁ − ∂_bΦ₂|`, `|∂_āΦ₂ + ∂_b̄Φ₁|`.
    pub residuals: [T; 4],
    pub passed: [bool; 4],
    pub tol: T,
    pub partials: PartialsReport<T>,
}

impl<T: Scalar> HolomorphyReport<T> {
    pub fn passes(&self) -> bool {
        self.passed.iter().all(|&ok| ok)
    }

    /// `|r₁ − r₃|` and `|r₂ − r₄|`: how far the left and right derivative conditions disagree.
    pub fn left_right_gap(&self) -> (T, T) {
        let r = self.residuals;
        ((r[0] - r[2]).abs(), (r[1] - r[3]).abs())
    }
}

/// Evaluates the four holomorphy conditions at `p3 = x + zj + uk`.
///
/// Partials are taken in all four directions first and then read at `y = 0`,
/// which realizes the transition `a = ā = x`. Without an explicit `tol` the
/// threshold is `50 h² · max(1, |f(p3)|, max partial)`.
pub fn check_h_holomorphy<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p3: Quaternion<T>,
    tol: Option<T>,
    h: Option<T>,
) -> Result<HolomorphyReport<T>> {
    if !p3.y.is_zero() {
        return Err(Error::NotThreeDimensionalPoint { y: p3.y.as_f64() });
    }
    let d = wirtinger_partials(f, p3, h)?;
    let tol = match tol {
        Some(t) => t,
        None => {
            let scale = T::one().max(f.eval(p3)?.norm()).max(d.max_norm());
            T::lit(50.0) * d.step * d.step * scale
        }
    };
    let residuals = [
        (d.d_a_phi1 - d.d_b_phi2.conj()).norm(),
        (d.d_a_phi2 + d.d_b_phi1.conj()).norm(),
        (d.d_a_phi1 - d.d_b_phi2).norm(),
        (d.d_abar_phi2 + d.d_bbar_phi1).norm(),
    ];
    Ok(HolomorphyReport {
        point: p3,
        residuals,
        passed: residuals.map(|r| r < tol),
        tol,
        partials: d,
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `k`-th full quaternionic derivative by central differences along the real axis.
///
/// Each order applies `∂_a + ∂_ā = ∂x`, so the `k`-th derivative is the `k`-th
/// real-direction difference quotient. Orders above [`MAX_NUMERIC_ORDER`] are
/// rejected; use [`full_derivative_expr`] for those.
pub fn full_derivative<T: Scalar, F: QuaternionFn<T> + ?Sized>(
    f: &F,
    p: Quaternion<T>,
    k: usize,
    h: Option<T>,
) -> Result<Quaternion<T>> {
    if k == 0 {
        return f.eval(p);
    }
    if k > MAX_NUMERIC_ORDER {
        return Err(Error::OrderTooHigh { k });
    }
    let h = h.unwrap_or_else(|| default_step(p, k));
    let half_k = T::lit(k as f64 / 2.0);
    let mut acc = Quaternion::zero();
    for j in 0..=k {
        let weight = T::lit(if j % 2 == 0 { 1.0 } else { -1.0 } * binomial(k, j));
        let offset = (half_k - T::from_count(j)) * h;
        acc += f.eval(p + Quaternion::from_real(offset))?.scale(weight);
    }
    Ok(acc.unscale(h.powi(k as i32)))
}

/// `k`-th full derivative of an expression: numeric up to order 4, symbolic beyond.
pub fn full_derivative_expr<T: Scalar>(e: &Expr, p: Quaternion<T>, k: usize) -> Result<Quaternion<T>> {
    if k <= MAX_NUMERIC_ORDER {
        return full_derivative(e, p, k, None);
    }
    let mut d = e.clone();
    for _ in 0..k {
        d = derivative(&d)?;
    }
    eval_quaternion(&d, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::function::ImaginaryUnitFn;

    type Q = Quaternion<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn identity_partials() {
        let f = parse("p").unwrap();
        let d = wirtinger_partials(&f, Q::new(0.3, 0.2, -0.5, 0.7), None).unwrap();
        assert!(close(d.d_a_phi1, c(1.0, 0.0), 1e-9));
        assert!(close(d.d_b_phi2, c(1.0, 0.0), 1e-9));
        for z in [d.d_abar_phi1, d.d_b_phi1, d.d_bbar_phi1, d.d_a_phi2, d.d_abar_phi2, d.d_bbar_phi2] {
            assert!(z.norm() < 1e-9);
        }
    }

    #[test]
    fn square_partials_match_symbolic_expansion() {
        // Φ₁ = a² − b b̄, Φ₂ = (a + ā) b
        let f = parse("p^2").unwrap();
        let p = Q::new(0.4, -0.3, 0.8, 0.5);
        let d = wirtinger_partials(&f, p, None).unwrap();
        let DoublingForm { a, b } = DoublingForm::from(p);
        assert!(close(d.d_a_phi1, a * 2.0, 1e-8));
        assert!(close(d.d_bbar_phi1, -b, 1e-8));
        assert!(close(d.d_b_phi1, -b.conj(), 1e-8));
        assert!(close(d.d_b_phi2, a + a.conj(), 1e-8));
        assert!(close(d.d_a_phi2, b, 1e-8));
        assert!(close(d.d_abar_phi2, b, 1e-8));
    }

    #[test]
    fn imaginary_unit_partial_transitions_to_half_inverse_b() {
        let p3 = Q::new(0.7, 0.0, 1.2, -0.9);
        let d = wirtinger_partials(&ImaginaryUnitFn, p3, None).unwrap();
        let b_abs = (1.2f64.powi(2) + 0.9f64.powi(2)).sqrt();
        assert!(close(d.d_a_phi1, c(0.5 / b_abs, 0.0), 1e-8));
        assert!(close(d.d_abar_phi1, c(-0.5 / b_abs, 0.0), 1e-8));
    }

    #[test]
    fn holomorphy_examples() {
        let p3 = Q::new(1.0, 0.0, 1.0, 0.0);
        let sq = check_h_holomorphy(&parse("p^2").unwrap(), p3, None, None).unwrap();
        assert!(sq.passes(), "{sq:?}");

        let conj = check_h_holomorphy(&parse("conj(p)").unwrap(), p3, None, None).unwrap();
        assert!(!conj.passed[0]);
        assert!((conj.residuals[0] - 1.0).abs() < 1e-8);

        let unit = check_h_holomorphy(&ImaginaryUnitFn, Q::new(0.0, 0.0, 2.0, 0.0), None, None)
            .unwrap();
        assert!(unit.passes());
        assert!(unit.residuals[1] < 1e-9 && unit.residuals[3] < 1e-9);

        assert!(matches!(
            check_h_holomorphy(&parse("p^2").unwrap(), Q::new(1.0, 1.0, 0.0, 0.0), None, None),
            Err(Error::NotThreeDimensionalPoint { .. })
        ));
    }

    #[test]
    fn full_derivative_examples() {
        let d = full_derivative(&parse("p^2").unwrap(), Q::j(), 1, None).unwrap();
        assert!((d - Q::j().scale(2.0)).norm() < 1e-9);

        let p = Q::new(0.3, -1.0, 2.0, 0.5);
        assert!(full_derivative(&ImaginaryUnitFn, p, 1, None).unwrap().norm() < 1e-12);

        let d = full_derivative(&parse("exp(p)").unwrap(), Q::zero(), 1, None).unwrap();
        assert!((d - Q::one()).norm() < 1e-9);

        assert_eq!(
            full_derivative(&parse("p").unwrap(), Q::zero(), 5, None),
            Err(Error::OrderTooHigh { k: 5 })
        );
    }

    #[test]
    fn higher_orders_agree_with_symbolic() {
        let e = parse("exp(p)*sin(p)").unwrap();
        let p = Q::new(0.2, 0.0, 0.6, -0.3);
        let mut sym = e.clone();
        for k in 1..=6 {
            sym = derivative(&sym).unwrap();
            let exact = eval_quaternion(&sym, p).unwrap();
            let approx = full_derivative_expr(&e, p, k).unwrap();
            let tol = [0.0, 1e-8, 1e-5, 1e-3, 1e-2, 1e-12, 1e-12][k];
            assert!((approx - exact).norm() < tol * (1.0 + exact.norm()), "order {k}");
        }
    }

    #[test]
    fn wirtinger_sum_is_real_direction_derivative() {
        let f = parse("sin(p)*p").unwrap();
        let p = Q::new(0.3, 0.4, -0.2, 0.9);
        let d = wirtinger_partials(&f, p, None).unwrap();
        let h = d.step;
        let direct = (eval_quaternion(&f, p + Q::from_real(h)).unwrap()
            - eval_quaternion(&f, p - Q::from_real(h)).unwrap())
        .unscale(2.0 * h);
        assert!((d.d_x() - direct).norm() < 1e-10);
        assert!(d.is_finite());
    }
}
