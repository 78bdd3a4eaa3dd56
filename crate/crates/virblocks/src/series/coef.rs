use std::fmt::Debug;

use num_rational::BigRational;

use crate::scalars::{rat_to_f64, Cplx, RatFunc, Var};
use crate::{Error, Result};

/// Coefficient ring for series and operators. `RatFunc` (in κ) is the exact
/// model; `f64` is a κ-specialized floating model used for fast numerics.
pub trait Coef: Clone + Debug + PartialEq + Send + Sync {
    /// Whether cancellation is exact (so residual checks are meaningful).
    const EXACT: bool;

    fn zero() -> Self;
    fn from_rat(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    /// Numeric value at κ = κ₀.
    fn value_at(&self, kappa0: f64) -> Result<f64>;

    fn one() -> Self {
        Self::from_rat(&crate::scalars::int(1))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(&crate::scalars::int(n))
    }
}

impl Coef for RatFunc {
    const EXACT: bool = true;

    fn zero() -> Self {
        RatFunc::zero(Var::Kappa)
    }
    fn from_rat(r: &BigRational) -> Self {
        RatFunc::constant(r.clone(), Var::Kappa)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn value_at(&self, kappa0: f64) -> Result<f64> {
        Ok(self.eval(Cplx::new(kappa0, 0.0))?.re)
    }
}

impl Coef for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn from_rat(r: &BigRational) -> Self {
        rat_to_f64(r)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self> {
        let v = self / o;
        if *o == 0.0 || !v.is_finite() {
            return Err(Error::DivisionByZero);
        }
        Ok(v)
    }
    fn value_at(&self, _kappa0: f64) -> Result<f64> {
        Ok(*self)
    }
}

/// How κ enters a computation: kept symbolic, fixed exactly, or fixed in floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum KappaMode {
    Symbolic,
    Exact(BigRational),
    Float(f64),
}
