use super::{Expr, Func};
use crate::error::{Error, Result};

/// Symbolic derivative with respect to the variable.
///
/// The rules are the complex ones; read with a quaternion argument the result
/// is the full quaternionic derivative. The literal `i` is a constant.
/// Fails only for `conj` and `re`.
pub fn derivative(e: &Expr) -> Result<Expr> {
    Ok(match e {
        Expr::Const(_) | Expr::ImagUnit => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Add(a, b) => Expr::add(derivative(a)?, derivative(b)?),
        Expr::Sub(a, b) => Expr::sub(derivative(a)?, derivative(b)?),
        Expr::Mul(a, b) => Expr::add(
            Expr::mul(derivative(a)?, (**b).clone()),
            Expr::mul((**a).clone(), derivative(b)?),
        ),
        Expr::Div(a, b) if a.is_var_free() => {
            // (c/g)' = -c g' g^-2
            Expr::mul(
                Expr::neg(Expr::mul((**a).clone(), derivative(b)?)),
                Expr::pow((**b).clone(), -2),
            )
        }
        Expr::Div(a, b) => Expr::div(
            Expr::sub(
                Expr::mul(derivative(a)?, (**b).clone()),
                Expr::mul((**a).clone(), derivative(b)?),
            ),
            Expr::pow((**b).clone(), 2),
        ),
        Expr::Pow(a, k) => Expr::mul(
            Expr::mul(Expr::Const(f64::from(*k)), Expr::pow((**a).clone(), k - 1)),
            derivative(a)?,
        ),
        Expr::Neg(a) => Expr::neg(derivative(a)?),
        Expr::Apply(f, a) => {
            let inner = derivative(a)?;
            let arg = (**a).clone();
            let outer = match f {
                Func::Exp => Expr::apply(Func::Exp, arg),
                Func::Sin => Expr::apply(Func::Cos, arg),
                Func::Cos => Expr::neg(Expr::apply(Func::Sin, arg)),
                Func::Log => Expr::pow(arg, -1),
                Func::Sqrt => Expr::div(
                    Expr::Const(1.0),
                    Expr::mul(Expr::Const(2.0), Expr::apply(Func::Sqrt, arg)),
                ),
                Func::Conj | Func::Re => {
                    return Err(Error::NotHolomorphic {
                        function: f.name(),
                    })
                }
            };
            Expr::mul(outer, inner)
        }
    })
}
