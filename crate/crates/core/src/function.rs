//! Quaternion-valued functions accepted by the calculus, integration and
//! series routines.
//!
//! Implementations must be pure: the same input gives the same output and
//! calls may happen from several threads at once.

use crate::error::Result;
use crate::expr::{eval_quaternion, Expr};
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// A function `H → H` that may fail at points outside its domain.
pub trait QuaternionFn<T: Scalar>: Sync {
    fn eval(&self, p: Quaternion<T>) -> Result<Quaternion<T>>;
}

impl<T: Scalar> QuaternionFn<T> for Expr {
    fn eval(&self, p: Quaternion<T>) -> Result<Quaternion<T>> {
        eval_quaternion(self, p)
    }
}

impl<T: Scalar, F> QuaternionFn<T> for F
where
    F: Fn(Quaternion<T>) -> Result<Quaternion<T>> + Sync,
{
    fn eval(&self, p: Quaternion<T>) -> Result<Quaternion<T>> {
        self(p)
    }
}

/// `p ↦ I(p)`, computed directly from the components rather than through an expression.
#[derive(Clone, Copy, Debug, Default)]
pub struct ImaginaryUnitFn;

impl<T: Scalar> QuaternionFn<T> for ImaginaryUnitFn {
    fn eval(&self, p: Quaternion<T>) -> Result<Quaternion<T>> {
        p.imaginary_unit()
    }
}

/// Cauchy kernel `p ↦ (p − center)⁻¹` for an arbitrary quaternion center.
#[derive(Clone, Copy, Debug)]
pub struct CauchyKernel<T> {
    pub center: Quaternion<T>,
}

impl<T: Scalar> QuaternionFn<T> for CauchyKernel<T> {
    fn eval(&self, p: Quaternion<T>) -> Result<Quaternion<T>> {
        (p - self.center).inverse()
    }
}
