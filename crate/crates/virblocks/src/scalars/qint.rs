use num_rational::BigRational;
use num_traits::One;

use super::{Poly, RatFunc, Var};

/// [n] = (qⁿ − q⁻ⁿ)/(q − q⁻¹), stored as (q^{2n−2} + … + 1)/q^{n−1}.
pub fn q_integer(n: i64) -> RatFunc {
    if n == 0 {
        return RatFunc::zero(Var::Q);
    }
    if n < 0 {
        return -q_integer(-n);
    }
    let m = n as usize;
    let mut coeffs = vec![BigRational::from_integer(0.into()); 2 * m - 1];
    for i in 0..m {
        coeffs[2 * i] = BigRational::one();
    }
    RatFunc::new(Poly::new(coeffs, Var::Q), Poly::monomial(BigRational::one(), m - 1, Var::Q))
}

/// [n]! = [1][2]⋯[n].
pub fn q_factorial(n: u32) -> RatFunc {
    (1..=n as i64).fold(RatFunc::one(Var::Q), |acc, k| &acc * &q_integer(k))
}
