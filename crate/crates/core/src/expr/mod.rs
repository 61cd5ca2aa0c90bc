//! Elementary-function expressions.
//!
//! One tree serves both readings of a holomorphic formula: evaluated at a
//! complex `ξ` (where the literal `i` is the complex unit) and at a quaternion
//! `p` (where `i` becomes the quaternionic unit `I` of `p`).
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = ("-" | "+") unary | power ;
//! power    = primary [ "^" unary ] ;          (* exponent folds to an integer *)
//! primary  = number | "p" | "xi" | "i" | "I" | "pi" | "e"
//!          | func "(" expr ")" | "(" expr ")" ;
//! func     = "exp" | "sin" | "cos" | "log" | "sqrt" | "conj" | "re" ;
//! number   = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ```
//!
//! `conj` and `re` are accepted so that non-holomorphic test functions can be
//! written; they have no derivative or antiderivative.

mod antideriv;
mod diff;
mod eval;
mod parse;
mod print;

use std::str::FromStr;

pub use antideriv::antiderivative;
pub use diff::derivative;
pub use eval::{eval_complex, eval_quaternion, eval_quaternion_with};
pub use parse::parse;

use crate::error::Error;

/// Functions that may appear in an [`Expr::Apply`] node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Log,
    Sqrt,
    Conj,
    Re,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Conj => "conj",
            Func::Re => "re",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "log" | "ln" => Func::Log,
            "sqrt" => Func::Sqrt,
            "conj" => Func::Conj,
            "re" | "Re" => Func::Re,
            _ => return None,
        })
    }

    /// False for `conj` and `re`, which are not complex-differentiable.
    pub fn is_holomorphic(self) -> bool {
        !matches!(self, Func::Conj | Func::Re)
    }
}

/// Expression tree. `Pow` exponents are integers.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    ImagUnit,
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Apply(Func, Box<Expr>),
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse(s)
    }
}

// Simplifying constructors used by the derivative and antiderivative tables.
// They fold constants and drop identities; the parser builds raw trees.
impl Expr {
    pub fn constant(v: f64) -> Self {
        Expr::Const(v)
    }

    pub fn as_const(&self) -> Option<f64> {
        match *self {
            Expr::Const(v) => Some(v),
            _ => None,
        }
    }

    fn is_const(&self, v: f64) -> bool {
        self.as_const() == Some(v)
    }

    /// True when the variable does not occur in the tree.
    pub fn is_var_free(&self) -> bool {
        match self {
            Expr::Var => false,
            Expr::Const(_) | Expr::ImagUnit => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_var_free() && b.is_var_free()
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Apply(_, a) => a.is_var_free(),
        }
    }

    /// True when every function node is holomorphic.
    pub fn is_holomorphic(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::ImagUnit | Expr::Var => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_holomorphic() && b.is_holomorphic()
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.is_holomorphic(),
            Expr::Apply(f, a) => f.is_holomorphic() && a.is_holomorphic(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::ImagUnit | Expr::Var => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Apply(_, a) => 1 + a.size(),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x + y),
            (Some(x), _) if x == 0.0 => b,
            (_, Some(y)) if y == 0.0 => a,
            _ => Expr::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x - y),
            (Some(x), _) if x == 0.0 => Expr::neg(b),
            (_, Some(y)) if y == 0.0 => a,
            _ => Expr::Sub(Box::new(a), Box::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_const(0.0) || b.is_const(0.0) {
            return Expr::Const(0.0);
        }
        match (a, b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
            (Expr::Const(x), b) if x == 1.0 => b,
            (a, Expr::Const(y)) if y == 1.0 => a,
            (Expr::Const(x), b) if x == -1.0 => Expr::neg(b),
            (a, Expr::Const(y)) if y == -1.0 => Expr::neg(a),
            (Expr::Const(x), Expr::Mul(inner_a, inner_b)) if inner_a.as_const().is_some() => {
                Expr::mul(Expr::Const(x * inner_a.as_const().unwrap()), *inner_b)
            }
            (Expr::Const(x), Expr::Neg(inner)) => Expr::mul(Expr::Const(-x), *inner),
            (a, Expr::Const(y)) => Expr::mul(Expr::Const(y), a),
            (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 => Expr::Const(x / y),
            (Some(x), _) if x == 0.0 => Expr::Const(0.0),
            (_, Some(y)) if y == 1.0 => a,
            _ => Expr::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(x) => Expr::Const(-x),
            Expr::Neg(inner) => *inner,
            a => Expr::Neg(Box::new(a)),
        }
    }

    pub fn pow(a: Expr, k: i32) -> Expr {
        match (a, k) {
            (_, 0) => Expr::Const(1.0),
            (a, 1) => a,
            (Expr::Const(x), k) if x != 0.0 || k > 0 => Expr::Const(x.powi(k)),
            (Expr::Pow(inner, m), k) if m.checked_mul(k).is_some() => Expr::pow(*inner, m * k),
            (a, k) => Expr::Pow(Box::new(a), k),
        }
    }

    pub fn apply(f: Func, a: Expr) -> Expr {
        Expr::Apply(f, Box::new(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplifying_constructors() {
        let p = Expr::Var;
        assert_eq!(Expr::mul(Expr::Const(1.0), p.clone()), p);
        assert_eq!(Expr::mul(p.clone(), Expr::Const(0.0)), Expr::Const(0.0));
        assert_eq!(
            Expr::mul(Expr::Const(3.0), Expr::mul(Expr::Const(2.0), p.clone())),
            Expr::Mul(Box::new(Expr::Const(6.0)), Box::new(p.clone()))
        );
        assert_eq!(Expr::pow(Expr::pow(p.clone(), 2), 3), Expr::Pow(Box::new(p.clone()), 6));
        assert_eq!(Expr::neg(Expr::neg(p.clone())), p);
        assert_eq!(Expr::sub(Expr::Const(0.0), p.clone()), Expr::Neg(Box::new(p)));
    }

    #[test]
    fn var_free_and_holomorphic() {
        let e: Expr = "i*pi + exp(2)".parse().unwrap();
        assert!(e.is_var_free());
        let e: Expr = "conj(p) + 1".parse().unwrap();
        assert!(!e.is_var_free());
        assert!(!e.is_holomorphic());
        assert!("sin(p)/p^4".parse::<Expr>().unwrap().is_holomorphic());
    }
}
