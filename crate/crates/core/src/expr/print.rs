use std::fmt;

use super::Expr;

// Binding strength of the printed form; a child printed below the level its
// parent requires gets parentheses.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Const(v) if v.is_sign_negative() => UNARY,
        Expr::Pow(..) => POWER,
        _ => ATOM,
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical text form; `parse(e.to_string())` rebuilds the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::ImagUnit => f.write_str("i"),
            Expr::Var => f.write_str("p"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                child(f, a, SUM)?;
                f.write_str(if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                child(f, b, PRODUCT)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                child(f, a, PRODUCT)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                child(f, b, UNARY)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                // a bare literal after '-' would be read back as a negative constant
                if matches!(**a, Expr::Const(_)) {
                    write!(f, "({a})")
                } else {
                    child(f, a, UNARY)
                }
            }
            Expr::Pow(base, k) => {
                child(f, base, ATOM)?;
                write!(f, "^{k}")
            }
            Expr::Apply(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
