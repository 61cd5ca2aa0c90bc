//! Evaluation in the complex and quaternionic readings.
//!
//! The quaternionic evaluator uses slice reduction: for `p = x + v I` it
//! evaluates the complex function at `x + v i` and maps the result
//! `α + β i` back to `α + β I`.

use num_complex::Complex;

use super::{Expr, Func};
use crate::error::{Error, Result};
use crate::quat::{Quaternion, DEFAULT_V_MIN};
use crate::scalar::Scalar;

fn domain(e: &Expr, reason: &'static str) -> Error {
    Error::EvalDomain {
        expr: e.to_string(),
        reason,
    }
}

fn cpowi<T: Scalar>(z: Complex<T>, k: i32) -> Option<Complex<T>> {
    let mut base = if k < 0 {
        if z.norm_sqr().is_zero() {
            return None;
        }
        z.inv()
    } else {
        z
    };
    let mut e = k.unsigned_abs();
    let mut acc = Complex::new(T::one(), T::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        e >>= 1;
    }
    Some(acc)
}

fn finite<T: Scalar>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Evaluates the expression at a complex argument.
pub fn eval_complex<T: Scalar>(e: &Expr, xi: Complex<T>) -> Result<Complex<T>> {
    let value = match e {
        Expr::Const(v) => Complex::new(T::lit(*v), T::zero()),
        Expr::ImagUnit => Complex::new(T::zero(), T::one()),
        Expr::Var => xi,
        Expr::Add(a, b) => eval_complex(a, xi)? + eval_complex(b, xi)?,
        Expr::Sub(a, b) => eval_complex(a, xi)? - eval_complex(b, xi)?,
        Expr::Mul(a, b) => eval_complex(a, xi)? * eval_complex(b, xi)?,
        Expr::Div(a, b) => {
            let num = eval_complex(a, xi)?;
            let den = eval_complex(b, xi)?;
            if den.norm_sqr().is_zero() {
                return Err(domain(e, "division by zero"));
            }
            num / den
        }
        Expr::Pow(a, k) => {
            cpowi(eval_complex(a, xi)?, *k).ok_or_else(|| domain(e, "negative power of zero"))?
        }
        Expr::Neg(a) => -eval_complex(a, xi)?,
        Expr::Apply(f, a) => {
            let z = eval_complex(a, xi)?;
            match f {
                Func::Exp => z.exp(),
                Func::Sin => z.sin(),
                Func::Cos => z.cos(),
                Func::Log => {
                    if z.norm_sqr().is_zero() {
                        return Err(domain(e, "logarithm of zero"));
                    }
                    z.ln()
                }
                Func::Sqrt => z.sqrt(),
                Func::Conj => z.conj(),
                Func::Re => Complex::new(z.re, T::zero()),
            }
        }
    };
    if !finite(value) {
        return Err(domain(e, "non-finite value"));
    }
    Ok(value)
}

/// Evaluates the expression at a quaternion using the default real-axis floor.
pub fn eval_quaternion<T: Scalar>(e: &Expr, p: Quaternion<T>) -> Result<Quaternion<T>> {
    eval_quaternion_with(e, p, T::lit(DEFAULT_V_MIN))
}

/// Slice-reduction evaluation with an explicit floor `v_min` on `|Im p|`.
///
/// At real `p` (`v ≤ v_min`) the complex function is evaluated at `x`; a
/// result with nonzero imaginary part has no slice to live in and raises
/// [`Error::OnRealAxis`].
pub fn eval_quaternion_with<T: Scalar>(
    e: &Expr,
    p: Quaternion<T>,
    v_min: T,
) -> Result<Quaternion<T>> {
    let v = p.imag_norm();
    if v <= v_min {
        let c = eval_complex(e, Complex::new(p.x, T::zero()))?;
        if !c.im.is_zero() {
            return Err(Error::OnRealAxis { v: v.as_f64() });
        }
        return Ok(Quaternion::from_real(c.re));
    }
    let axis = p.im().unscale(v);
    let c = eval_complex(e, Complex::new(p.x, v))?;
    Ok(Quaternion::from_real(c.re) + axis.scale(c.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    type Q = Quaternion<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn complex_examples() {
        let exp = parse("exp(xi)").unwrap();
        assert_eq!(eval_complex(&exp, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let sinc4 = parse("sin(xi)/xi^4").unwrap();
        assert!(matches!(
            eval_complex(&sinc4, c(0.0, 0.0)),
            Err(Error::EvalDomain { .. })
        ));
        let geo = parse("1/(1-xi)").unwrap();
        assert_eq!(eval_complex(&geo, c(0.5, 0.0)).unwrap(), c(2.0, 0.0));
        assert!(eval_complex(&parse("log(p)").unwrap(), c(0.0, 0.0)).is_err());
        assert!(eval_complex(&parse("p^-1").unwrap(), c(0.0, 0.0)).is_err());
        assert_eq!(eval_complex(&parse("i*i").unwrap(), c(3.0, 1.0)).unwrap(), c(-1.0, 0.0));
    }

    #[test]
    fn domain_error_names_subexpression() {
        let e = parse("exp(p) + 1/(p-1)").unwrap();
        match eval_complex(&e, c(1.0, 0.0)) {
            Err(Error::EvalDomain { expr, .. }) => assert_eq!(expr, "1/(p-1)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quaternion_examples() {
        let sq = parse("p^2").unwrap();
        let p = Q::i() + Q::j();
        let r = eval_quaternion(&sq, p).unwrap();
        assert!((r - Q::from_real(-2.0)).norm() < 1e-14);

        assert_eq!(eval_quaternion(&parse("exp(p)").unwrap(), Q::zero()).unwrap(), Q::one());

        let p = Q::new(1.0, 3.0, 0.0, 4.0);
        let r = eval_quaternion(&sq, p).unwrap();
        assert!((r - p * p).norm() < 1e-12);
    }

    #[test]
    fn imag_unit_becomes_slice_unit() {
        let unit = parse("i").unwrap();
        let p = Q::new(2.0, 0.0, 3.0, 4.0);
        assert_eq!(eval_quaternion(&unit, p).unwrap(), Q::new(0.0, 0.0, 0.6, 0.8));
        assert!(matches!(
            eval_quaternion(&unit, Q::from_real(2.0)),
            Err(Error::OnRealAxis { .. })
        ));
        // real-valued results on the real axis are fine
        assert_eq!(
            eval_quaternion(&parse("i*i").unwrap(), Q::from_real(2.0)).unwrap(),
            Q::from_real(-1.0)
        );
    }

    #[test]
    fn conj_and_re_readings() {
        let p = Q::new(0.5, 0.0, -1.0, 2.0);
        assert!((eval_quaternion(&parse("conj(p)").unwrap(), p).unwrap() - p.conj()).norm() < 1e-15);
        assert_eq!(eval_quaternion(&parse("re(p)").unwrap(), p).unwrap(), Q::from_real(0.5));
    }
}
