//! One-dimensional quadrature rules used by the path and integration modules.

use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// Nodes per Gauss–Legendre panel.
pub const GL_PANEL_POINTS: usize = 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // three-term recurrence for P_n(x) and P_{n-1}(x)
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let m = m as f64;
                let p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// Composite Gauss–Legendre over `[a, b]` with `panels` equal panels of
/// [`GL_PANEL_POINTS`] nodes. Nodes are visited in increasing order and
/// summed in that order.
pub fn composite_gauss_legendre<T, E>(
    a: T,
    b: T,
    panels: usize,
    mut integrand: impl FnMut(T) -> Result<Quaternion<T>, E>,
) -> Result<Quaternion<T>, E>
where
    T: Scalar,
{
    let rule = gauss_legendre(GL_PANEL_POINTS);
    let panels = panels.max(1);
    let width = (b - a) / T::from_count(panels);
    let half = width * T::lit(0.5);
    let mut total = Quaternion::zero();
    for panel in 0..panels {
        let mid = a + width * (T::from_count(panel) + T::lit(0.5));
        let mut acc = Quaternion::zero();
        for &(node, weight) in &rule {
            let t = mid + half * T::lit(node);
            acc += integrand(t)?.scale(T::lit(weight));
        }
        total += acc.scale(half);
    }
    Ok(total)
}

/// Periodic trapezoid sum `(β−α)/n · Σ g(α + k(β−α)/n)` over precomputed samples.
pub fn periodic_trapezoid<T: Scalar>(samples: &[Quaternion<T>], period: T) -> Quaternion<T> {
    let n = samples.len();
    let sum: Quaternion<T> = samples.iter().copied().sum();
    sum.scale(period / T::from_count(n))
}

/// Adaptive Simpson quadrature of a real function.
pub fn adaptive_simpson<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    #[allow(clippy::too_many_arguments)]
    fn step<T: Scalar>(
        f: &impl Fn(T) -> T,
        a: T,
        b: T,
        fa: T,
        fm: T,
        fb: T,
        whole: T,
        tol: T,
        depth: u32,
    ) -> T {
        let two = T::lit(2.0);
        let m = (a + b) / two;
        let lm = (a + m) / two;
        let rm = (m + b) / two;
        let flm = f(lm);
        let frm = f(rm);
        let six = T::lit(6.0);
        let left = (m - a) * (fa + T::lit(4.0) * flm + fm) / six;
        let right = (b - m) * (fm + T::lit(4.0) * frm + fb) / six;
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
            return left + right + delta / T::lit(15.0);
        }
        step(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) / T::lit(2.0);
    let fm = f(m);
    let whole = (b - a) * (fa + T::lit(4.0) * fm + fb) / T::lit(6.0);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16] {
            let rule = gauss_legendre(n);
            let wsum: f64 = rule.iter().map(|r| r.1).sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let approx: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((approx - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn composite_rule_on_smooth_function() {
        let v = composite_gauss_legendre::<f64, ()>(0.0, std::f64::consts::PI, 3, |t| {
            Ok(Quaternion::new(t.sin(), t.cos(), 0.0, 1.0))
        })
        .unwrap();
        assert!((v - Quaternion::new(2.0, 0.0, 0.0, std::f64::consts::PI)).norm() < 1e-14);
    }

    #[test]
    fn simpson_adapts() {
        let v = adaptive_simpson(&|t: f64| (1.0 - t * t).max(0.0).sqrt(), -1.0, 1.0, 1e-12);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }
}
