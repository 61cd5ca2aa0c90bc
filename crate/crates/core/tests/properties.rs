use std::f64::consts::TAU;

use hquat::expr::eval_quaternion;
use hquat::geometry::{winding_number, Orientation, Path};
use hquat::integrate::{contour_integral, QuadratureConfig};
use hquat::series::laurent_coeffs;
use hquat::{CauchyKernel, DoublingForm, Expr, Func, Quat, Quat32, QuatRational};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn component() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn quat() -> impl Strategy<Value = Quat> {
    (component(), component(), component(), component()).prop_map(|(x, y, z, u)| Quat::new(x, y, z, u))
}

fn unit_axis() -> impl Strategy<Value = Quat> {
    (component(), component(), component())
        .prop_filter("nonzero", |(y, z, u)| y * y + z * z + u * u > 1e-2)
        .prop_map(|(y, z, u)| Quat::new(0.0, y, z, u).normalized().unwrap())
}

fn close(a: Quat, b: Quat, tol: f64) -> bool {
    a.distance(b) <= tol * (1.0 + a.norm().max(b.norm()))
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-50i32..50, 0u32..3).prop_map(|(n, d)| Expr::Const(n as f64 / 10f64.powi(d as i32))),
        Just(Expr::ImagUnit),
        Just(Expr::Var),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        let func = prop_oneof![
            Just(Func::Exp),
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Log),
            Just(Func::Sqrt),
            Just(Func::Conj),
            Just(Func::Re),
        ];
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -3i32..5).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (func, inner).prop_map(|(f, a)| Expr::Apply(f, Box::new(a))),
        ]
    })
}

proptest! {
    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() <= 1e-12 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn conjugate_reverses_products(p in quat(), q in quat()) {
        prop_assert!(close((p * q).conj(), q.conj() * p.conj(), 1e-14));
    }

    #[test]
    fn product_is_associative(p in quat(), q in quat(), r in quat()) {
        prop_assert!(close((p * q) * r, p * (q * r), 1e-13));
    }

    #[test]
    fn doubling_form_agrees_with_hamilton(p in quat(), q in quat()) {
        let d = DoublingForm::from(p).mul(DoublingForm::from(q));
        prop_assert!(close(Quat::from(d), p * q, 1e-14));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one(p in quat()) {
        prop_assume!(p.imag_norm() > 1e-6);
        let unit = p.imaginary_unit().unwrap();
        prop_assert!(close(unit * unit, -Quat::one(), 1e-14));
    }

    #[test]
    fn polar_round_trip(p in quat()) {
        prop_assume!(p.norm() > 1e-9);
        let polar = p.polar().unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&polar.theta));
        prop_assert!(close(polar.to_quaternion(), p, 1e-14));
    }

    #[test]
    fn literal_round_trip(p in quat()) {
        let back: Quat = p.to_string().parse().unwrap();
        prop_assert!(close(back, p, 1e-11));
    }

    #[test]
    fn slice_elements_commute(x1 in component(), v1 in component(), x2 in component(), v2 in component(), axis in unit_axis()) {
        let p = Quat::from_real(x1) + axis.scale(v1);
        let q = Quat::from_real(x2) + axis.scale(v2);
        prop_assert!(close(p * q, q * p, 1e-14));
    }

    #[test]
    fn expressions_print_and_parse_back(e in expr_tree()) {
        let printed = e.to_string();
        let parsed: Expr = printed.parse().map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn slice_evaluation_matches_hamilton_polynomial(
        coeffs in prop::collection::vec(-3.0..3.0f64, 1..6),
        p in (-1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64).prop_map(|(x, y, z, u)| Quat::new(x, y, z, u)),
    ) {
        let text = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| format!("({c:?})*p^{k}"))
            .collect::<Vec<_>>()
            .join("+");
        let e: Expr = text.parse().unwrap();
        let horner = coeffs.iter().rev().fold(Quat::zero(), |acc, c| acc * p + Quat::from_real(*c));
        prop_assert!(close(eval_quaternion(&e, p).unwrap(), horner, 1e-12));
    }

    #[test]
    fn reversal_negates_integral(a in quat(), b in quat()) {
        let cfg = QuadratureConfig::with_points(32);
        let f: Expr = "p^2+sin(p)".parse().unwrap();
        let path = Path::segment(a.scale(0.2), b.scale(0.2));
        let forward = contour_integral(&f, &path, &cfg).unwrap();
        let back = contour_integral(&f, &path.clone().reverse(), &cfg).unwrap();
        prop_assert!(forward.value.distance(-back.value) <= 1e-12 + forward.error_estimate + back.error_estimate);
    }

    #[test]
    fn winding_is_translation_invariant(shift in quat(), axis in unit_axis(), rho in 0.0..0.9f64, theta in 0.0..TAU) {
        let p0 = Quat::axis_exp(axis, theta).scale(rho);
        let loop_ = Path::circle(Quat::zero(), 1.0, axis, Orientation::Positive).unwrap();
        let before = winding_number(&loop_, p0).unwrap();
        let after = winding_number(&loop_.translated(shift), p0 + shift).unwrap();
        prop_assert_eq!(before, after);
        prop_assert_eq!(before.abs(), 1);
    }
}

#[test]
fn rationals_multiply_exactly() {
    let r = |n, d| Rational64::new(n, d);
    let p = QuatRational::new(r(1, 2), r(-1, 3), r(2, 5), r(0, 1));
    let q = QuatRational::new(r(3, 7), r(1, 1), r(-1, 4), r(5, 6));
    assert_eq!((p * q).conj(), q.conj() * p.conj());
    assert_eq!(p.norm_sqr() * q.norm_sqr(), (p * q).norm_sqr());
    assert_eq!(p * p.inverse().unwrap(), QuatRational::one());
}

#[test]
fn single_precision_kernel() {
    let axis = Quat32::j();
    let path = Path::circle(Quat32::zero(), 1.0f32, axis, Orientation::Positive).unwrap();
    let v = contour_integral(&CauchyKernel { center: Quat32::zero() }, &path, &QuadratureConfig::with_points(64)).unwrap();
    assert!((v.value - axis.scale(std::f32::consts::TAU)).norm() < 1e-5);
}

#[test]
fn integrals_are_additive_over_concatenation() {
    let cfg = QuadratureConfig::default();
    let f: Expr = "exp(p)*p-p^3".parse().unwrap();
    let corners = [
        Quat::zero(),
        Quat::new(1.0, 0.5, 0.0, 0.0),
        Quat::new(1.0, 0.5, 1.0, -0.5),
        Quat::new(-0.5, 0.0, 0.0, 1.0),
    ];
    let parts: Vec<Path<f64>> = corners.windows(2).map(|w| Path::segment(w[0], w[1])).collect();
    let sum = parts
        .iter()
        .map(|p| contour_integral(&f, p, &cfg).unwrap().value)
        .fold(Quat::zero(), |a, b| a + b);
    let whole = contour_integral(&f, &Path::concat(parts).unwrap(), &cfg).unwrap().value;
    assert!(whole.distance(sum) < 1e-10);
}

#[test]
fn kernel_integral_ignores_radius_and_keeps_magnitude_across_axes() {
    let cfg = QuadratureConfig::default();
    let s = 1.0 / 3f64.sqrt();
    for axis in [Quat::i(), Quat::j(), Quat::k(), Quat::new(0.0, s, s, s)] {
        let p0 = Quat::from_real(0.4) + axis.scale(-0.3);
        let values: Vec<Quat> = [0.1, 0.5, 1.0, 2.0]
            .iter()
            .map(|&r| {
                let c = Path::circle(p0, r, axis, Orientation::Positive).unwrap();
                contour_integral(&CauchyKernel { center: p0 }, &c, &cfg).unwrap().value
            })
            .collect();
        for v in &values {
            assert!(v.distance(values[0]) < 1e-10);
            assert!((v.norm() - TAU).abs() < 1e-10);
        }
    }
}

#[test]
fn laurent_partial_sums_reconstruct_worked_examples() {
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (text, r) in [("sin(p)/p", 1.0), ("sin(p)/p^4", 1.0), ("sin(1/p)", 1.0)] {
        let f: Expr = text.parse().unwrap();
        let data = laurent_coeffs(&f, Quat::zero(), r, 12, &cfg).unwrap();
        for _ in 0..20 {
            // real coefficients make the expansion valid in every slice
            let axis = loop {
                let v = Quat::new(0.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if v.norm() > 0.1 {
                    break v.normalized().unwrap();
                }
            };
            let p = Quat::axis_exp(axis, rng.gen_range(0.0..TAU)).scale(rng.gen_range(0.8..1.2));
            let direct = eval_quaternion(&f, p).unwrap();
            let series = data.eval(p).unwrap();
            assert!(series.distance(direct) <= 1e-6 * direct.norm(), "{text} at {p}");
        }
    }
}

#[test]
fn polygon_winding_matches_ray_crossing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 200 {
        let axis = Quat::new(0.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            .normalized()
            .unwrap();
        // star-shaped polygon around the origin, counter-clockwise in (x, v)
        let n = rng.gen_range(3..9);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let verts: Vec<(f64, f64)> = angles
            .iter()
            .map(|a| {
                let rho = rng.gen_range(0.5..2.0);
                (rho * a.cos(), rho * a.sin())
            })
            .collect();
        let point = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let edge_distance = (0..n)
            .map(|k| segment_distance(point, verts[k], verts[(k + 1) % n]))
            .fold(f64::INFINITY, f64::min);
        if edge_distance < 1e-3 {
            continue;
        }
        let mut inside = false;
        for k in 0..n {
            let (a, b) = (verts[k], verts[(k + 1) % n]);
            if (a.1 > point.1) != (b.1 > point.1) {
                let x = a.0 + (point.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
                if x > point.0 {
                    inside = !inside;
                }
            }
        }
        let embed = |(x, v): (f64, f64)| Quat::from_real(x) + axis.scale(v);
        let path = Path::concat((0..n).map(|k| Path::segment(embed(verts[k]), embed(verts[(k + 1) % n]))).collect())
            .unwrap();
        let winding = winding_number(&path, embed(point)).unwrap();
        // the canonical axis may point against the one used to build the polygon
        assert_eq!(winding.abs(), i64::from(inside), "polygon {verts:?} point {point:?}");
        checked += 1;
    }
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
}
