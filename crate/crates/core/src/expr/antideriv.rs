use super::{derivative, Expr, Func};

/// Slope of an affine argument `α p + β`, or `None` if the argument is not affine.
fn affine_slope(e: &Expr) -> Option<Expr> {
    let slope = derivative(e).ok()?;
    (slope.is_var_free() && slope.as_const() != Some(0.0)).then_some(slope)
}

/// Table-driven antiderivative.
///
/// Covers constants, the power rule for `k ≠ -1`, `exp`, `sin`, `cos`, linear
/// combinations with constant factors, and affine inner arguments. Returns
/// `None` when the integrand is not in the table; `1/p` is deliberately
/// absent because its antiderivative is a logarithm.
pub fn antiderivative(e: &Expr) -> Option<Expr> {
    if e.is_var_free() {
        return Some(Expr::mul(e.clone(), Expr::Var));
    }
    match e {
        Expr::Var => Some(Expr::div(Expr::pow(Expr::Var, 2), Expr::Const(2.0))),
        Expr::Add(a, b) => Some(Expr::add(antiderivative(a)?, antiderivative(b)?)),
        Expr::Sub(a, b) => Some(Expr::sub(antiderivative(a)?, antiderivative(b)?)),
        Expr::Neg(a) => Some(Expr::neg(antiderivative(a)?)),
        Expr::Mul(a, b) if a.is_var_free() => Some(Expr::mul((**a).clone(), antiderivative(b)?)),
        Expr::Mul(a, b) if b.is_var_free() => Some(Expr::mul(antiderivative(a)?, (**b).clone())),
        Expr::Div(a, b) if b.is_var_free() => Some(Expr::div(antiderivative(a)?, (**b).clone())),
        Expr::Pow(inner, k) if *k != -1 => {
            let slope = affine_slope(inner)?;
            Some(Expr::div(
                Expr::pow((**inner).clone(), k + 1),
                Expr::mul(Expr::Const(f64::from(k + 1)), slope),
            ))
        }
        Expr::Apply(f @ (Func::Exp | Func::Sin | Func::Cos), inner) => {
            let slope = affine_slope(inner)?;
            let arg = (**inner).clone();
            let outer = match f {
                Func::Exp => Expr::apply(Func::Exp, arg),
                Func::Sin => Expr::neg(Expr::apply(Func::Cos, arg)),
                _ => Expr::apply(Func::Sin, arg),
            };
            Some(Expr::div(outer, slope))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn anti(src: &str) -> Option<Expr> {
        antiderivative(&parse(src).unwrap())
    }

    #[test]
    fn table_examples() {
        assert_eq!(anti("p^2").unwrap().to_string(), "p^3/3");
        assert_eq!(anti("cos(p)").unwrap(), parse("sin(p)").unwrap());
        assert_eq!(anti("1/p"), None);
        assert_eq!(anti("p^-1"), None);
        assert_eq!(anti("exp(p^2)"), None);
        assert_eq!(anti("conj(p)"), None);
        assert_eq!(anti("2").unwrap().to_string(), "2*p");
    }

    #[test]
    fn affine_substitution() {
        assert_eq!(anti("exp(2*p+1)").unwrap().to_string(), "exp(2*p+1)/2");
        assert_eq!(anti("(3*p-1)^2").unwrap().to_string(), "(3*p-1)^3/9");
        assert!(anti("sin(p/4 - i)").is_some());
        assert_eq!(anti("sin(p-p)"), None);
    }
}
