//! Quaternionic calculus of H-holomorphic functions.
//!
//! Functions are written once as elementary expressions and read either with
//! a complex argument or with a quaternion argument (where the literal `i`
//! becomes the quaternionic unit `I`). On top of that the crate provides
//! numerical Wirtinger partials and the holomorphy test, contour integrals
//! over quaternionic paths, Taylor and Laurent coefficients by circle
//! sampling, residues and singularity classification.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); quaternion
//! arithmetic also works over exact rationals. The aliases below fix the
//! common choices.

// `!(x > 0)` is deliberate: it rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Expression builders are named after the operation they simplify.
#![allow(clippy::should_implement_trait, clippy::redundant_guards)]

pub mod calculus;
pub mod error;
pub mod expr;
pub mod function;
pub mod geometry;
pub mod integrate;
pub mod quadrature;
pub mod quat;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{Expr, Func};
pub use function::{CauchyKernel, ImaginaryUnitFn, QuaternionFn};
pub use quat::{embed, DoublingForm, PolarForm, Quaternion};
pub use scalar::Scalar;

/// Double-precision quaternion, the default working type.
pub type Quat = Quaternion<f64>;
/// Single-precision quaternion.
pub type Quat32 = Quaternion<f32>;
/// Quaternion over exact rationals, for arithmetic identities.
pub type QuatRational = Quaternion<num_rational::Rational64>;
/// Double-precision path.
pub type Path64 = geometry::Path<f64>;
/// Double-precision Laurent data.
pub type LaurentData64 = series::LaurentData<f64>;
