//! Exact rationals, dense polynomials, rational functions and the numeric layer.

pub mod config;
pub mod gamma;
pub mod linalg;
pub mod poly;
pub mod qint;
pub mod ratfunc;

pub use gamma::gamma;
pub use num_complex::Complex64 as Cplx;
pub use num_rational::BigRational;
pub use poly::{Poly, Var};
pub use qint::{q_factorial, q_integer};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// "a/b", or "a" when the denominator is 1.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Binomial coefficient C(a, k) for integer a (possibly negative) and k ≥ 0.
pub fn binom(a: i64, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact rational equal to the given finite double.
pub fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
