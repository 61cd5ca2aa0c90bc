use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("imaginary unit undefined on the real axis (|imaginary part| = {v:e})")]
    OnRealAxis { v: f64 },
    #[error("polar form undefined for the zero quaternion")]
    ZeroQuaternion,
    #[error("axis must be a unit pure-imaginary quaternion")]
    NotUnitImaginary,
    #[error("non-finite quaternion component")]
    NonFinite,
    #[error("invalid quaternion literal {text:?}: {reason}")]
    InvalidLiteral { text: String, reason: String },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function {name:?} at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("exponent must be an integer constant (at byte {offset})")]
    NonIntegerExponent { offset: usize },
    #[error("evaluation outside the domain of `{expr}`: {reason}")]
    EvalDomain { expr: String, reason: &'static str },
    #[error("`{function}` is not holomorphic and has no complex derivative")]
    NotHolomorphic { function: &'static str },

    #[error("holomorphy check needs a 3D point with zero i-component, got y = {y:e}")]
    NotThreeDimensionalPoint { y: f64 },
    #[error("numeric differentiation order {k} exceeds the supported maximum of 4")]
    OrderTooHigh { k: usize },

    #[error("parameter {t} lies outside the path interval [{start}, {end}]")]
    OutOfInterval { t: f64, start: f64, end: f64 },
    #[error("concatenated paths do not chain: part {index} ends {gap:e} away from the next start")]
    ChainBreak { index: usize, gap: f64 },
    #[error("path and point do not lie in one slice plane (residual {residual:e})")]
    NotSlicePlanar { residual: f64 },
    #[error("point lies on the path (distance {distance:e})")]
    PointOnPath { distance: f64 },
    #[error("accumulated angle {turns} turns is not close to an integer")]
    AngleAccumulationInconsistent { turns: f64 },
    #[error("path is not closed")]
    NotClosed,
    #[error("invalid path spec {spec:?}: {reason}")]
    InvalidPathSpec { spec: String, reason: String },

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("integrand is singular on the path at t = {t}")]
    SingularOnPath { t: f64 },
    #[error("quadrature did not reach tolerance within {evaluations} evaluations")]
    NonConvergent { evaluations: usize },
    #[error("no antiderivative for `{expr}` in the table")]
    NoAntiderivativeInTable { expr: String },
    #[error("point does not have winding number 1 with respect to the circle")]
    PointNotInside,

    #[error("pole lies on the integration path")]
    PoleOnPath,
    #[error("pole {index} is not enclosed by the loop")]
    PoleOutside { index: usize },
    #[error("loop winds {winding} times around pole {index}; a simple loop is required")]
    NotSimpleLoop { index: usize, winding: i64 },
    #[error("expansion axis does not span the slice of the center")]
    AxisNotInSlice,
    #[error("classification inconclusive: radius {r1} gives {first}, radius {r2} gives {second}")]
    Inconclusive { r1: f64, first: String, r2: f64, second: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
