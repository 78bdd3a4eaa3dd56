use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat_from_f64, rat_to_f64, Cplx, Poly, Var};
use crate::scalars::config::CONFIG;
use crate::{Error, Result};

/// Reduced fraction num/den with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and reduces num/den. Panics if den is zero; use `try_new` for input data.
    pub fn new(num: Poly, den: Poly) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(den.var()));
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Ok(Self::make_monic(num, den))
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        let l = den.lead();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = l.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero(var: Var) -> Self {
        RatFunc { num: Poly::zero(var), den: Poly::one(var) }
    }

    pub fn one(var: Var) -> Self {
        RatFunc { num: Poly::one(var), den: Poly::one(var) }
    }

    pub fn constant(c: BigRational, var: Var) -> Self {
        RatFunc { num: Poly::constant(c, var), den: Poly::one(var) }
    }

    pub fn from_int(n: i64, var: Var) -> Self {
        Self::constant(super::int(n), var)
    }

    pub fn from_poly(p: Poly) -> Self {
        let var = p.var();
        RatFunc { num: p, den: Poly::one(var) }
    }

    /// The variable t itself.
    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::monomial(BigRational::one(), 1, v))
    }

    /// tⁿ for any integer n.
    pub fn t_pow(n: i64, v: Var) -> Self {
        if n >= 0 {
            Self::from_poly(Poly::monomial(BigRational::one(), n as usize, v))
        } else {
            RatFunc { num: Poly::one(v), den: Poly::monomial(BigRational::one(), (-n) as usize, v) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn var_tag(&self) -> Var {
        if self.num.degree() > 0 {
            self.num.var()
        } else {
            self.den.var()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value if the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.degree() <= 0 && self.den.degree() == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.var_tag());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> RatFunc {
        let base = if n < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let n = n.unsigned_abs() as u32;
        RatFunc { num: base.num.pow(n), den: base.den.pow(n) }
    }

    /// Substitute t ↦ a·t + b.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> RatFunc {
        RatFunc::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    /// Evaluation at a complex point. Real points are evaluated exactly in
    /// rational arithmetic first, which avoids cancellation in long polynomials.
    pub fn eval(&self, t0: Cplx) -> Result<Cplx> {
        if t0.im == 0.0 && t0.re.is_finite() {
            return self.eval_real(t0.re).map(|v| Cplx::new(v, 0.0));
        }
        let d = self.den.eval_cplx(t0);
        let scale = self.den.abs_scale(t0.norm());
        if near_pole(d.norm(), scale) {
            return Err(Error::PoleAtEvaluationPoint);
        }
        let v = self.num.eval_cplx(t0) / d;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::PoleAtEvaluationPoint)
        }
    }

    pub fn eval_real(&self, t0: f64) -> Result<f64> {
        let t = rat_from_f64(t0);
        let d = self.den.eval_rat(&t);
        let scale = self.den.abs_scale(t0);
        if near_pole(rat_to_f64(&d).abs(), scale) {
            return Err(Error::PoleAtEvaluationPoint);
        }
        let v = rat_to_f64(&(self.num.eval_rat(&t) / d));
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::PoleAtEvaluationPoint)
        }
    }

    /// Substitutes t for the variable, keeping the value exact (as a constant).
    /// The same relative pole tolerance as numeric evaluation applies.
    pub fn specialize(&self, t: &BigRational) -> Result<RatFunc> {
        if self.den.degree() == 0 && self.num.degree() <= 0 {
            return Ok(self.clone());
        }
        let d = self.den.eval_rat(t);
        if near_pole(rat_to_f64(&d).abs(), self.den.abs_scale(rat_to_f64(t))) {
            return Err(Error::PoleAtEvaluationPoint);
        }
        Ok(RatFunc::constant(self.num.eval_rat(t) / d, self.var_tag()))
    }

    pub fn eval_exact(&self, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rat(t);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluationPoint);
        }
        Ok(self.num.eval_rat(t) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc { num, den: self.den.clone() };
            }
            return RatFunc::new(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: &(&self.num * &rhs.den) + &rhs.num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            return RatFunc { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        // Henrici: only the gcd of the denominators can cancel
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFunc::make_monic(num, den);
        }
        let b1 = self.den.div_exact(&g);
        let d1 = rhs.den.div_exact(&g);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero(self.var_tag());
        }
        let g2 = Poly::gcd(&num, &g);
        let den = &(&b1 * &d1) * &g;
        if g2.is_one() {
            RatFunc::make_monic(num, den)
        } else {
            RatFunc::make_monic(num.div_exact(&g2), den.div_exact(&g2))
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.var_tag());
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() { (self.num.clone(), rhs.den.clone()) } else { (self.num.div_exact(&g1), rhs.den.div_exact(&g1)) };
        let (c, b) = if g2.is_one() { (rhs.num.clone(), self.den.clone()) } else { (rhs.num.div_exact(&g2), self.den.div_exact(&g2)) };
        RatFunc::make_monic(&a * &c, &b * &d)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use `checked_div` for fallible input.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

/// True when |den| is within the relative pole tolerance of zero, or NaN.
fn near_pole(den_abs: f64, scale: f64) -> bool {
    den_abs.is_nan() || den_abs <= CONFIG.pole_tol * scale
}
