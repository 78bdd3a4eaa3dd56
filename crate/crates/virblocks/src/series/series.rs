use std::collections::BTreeMap;

use crate::scalars::{Cplx, RatFunc};
use crate::virasoro::BetaCoef;
use crate::{Error, Result};

use super::coef::Coef;

/// Marks a series whose stored terms are complete at every order.
pub const EXACT: i64 = i64::MAX / 4;

/// Σ_n c_n ∏ x_i^{base_i + n_i}, known exactly for orders Σ w_i n_i ≤ exact_through.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C = RatFunc> {
    pub base: Vec<C>,
    pub weights: Vec<i64>,
    pub terms: BTreeMap<Vec<i64>, C>,
    pub exact_through: i64,
}

impl<C: Coef> Series<C> {
    pub fn monomial(base: Vec<C>, weights: Vec<i64>, coef: C) -> Self {
        let n = base.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(vec![0; n], coef);
        }
        Series { base, weights, terms, exact_through: EXACT }
    }

    pub fn nvars(&self) -> usize {
        self.base.len()
    }

    pub fn order(&self, n: &[i64]) -> i64 {
        n.iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }

    pub fn coeff(&self, n: &[i64]) -> C {
        self.terms.get(n).cloned().unwrap_or_else(C::zero)
    }

    /// Same series with the base and every coefficient mapped through `f`.
    pub fn map_coef<D: Coef>(&self, f: &impl Fn(&C) -> Result<D>) -> Result<Series<D>> {
        Ok(Series {
            base: self.base.iter().map(f).collect::<Result<_>>()?,
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(n, c)| Ok((n.clone(), f(c)?))).collect::<Result<_>>()?,
            exact_through: self.exact_through,
        })
    }

    /// True when every stored term through the exact order is zero.
    pub fn vanishes(&self) -> bool {
        self.terms.iter().all(|(n, c)| c.is_zero() || self.order(n) > self.exact_through)
    }

    pub fn max_order(&self) -> Option<i64> {
        self.terms.keys().map(|n| self.order(n)).max()
    }

    /// Value at positive real points, plus |Σ of the terms at the truncation
    /// order| as a tail estimate (zero for a series known to all orders).
    pub fn eval(&self, kappa0: f64, points: &[f64]) -> Result<(Cplx, f64)> {
        if points.len() != self.nvars() || points.iter().any(|&x| x.is_nan() || x <= 0.0) {
            return Err(Error::DomainViolation("evaluation points must be positive, one per variable".into()));
        }
        let base: Vec<f64> = self.base.iter().map(|b| b.value_at(kappa0)).collect::<Result<_>>()?;
        let logs: Vec<f64> = points.iter().map(|x| x.ln()).collect();
        let mut total = 0.0;
        let mut tail = 0.0;
        for (n, c) in &self.terms {
            let ord = self.order(n);
            if ord > self.exact_through {
                continue;
            }
            let e: f64 = (0..n.len()).map(|i| (base[i] + n[i] as f64) * logs[i]).sum();
            let v = c.value_at(kappa0)? * e.exp();
            total += v;
            if ord == self.exact_through {
                tail += v;
            }
        }
        let tail = tail.abs();
        Ok((Cplx::new(total, 0.0), tail))
    }
}

/// A normalized block series: the nested Frobenius series together with its
/// β prefactor. Variables are ordered from the innermost (smallest) point.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSeries<C = RatFunc> {
    pub series: Series<C>,
    pub trunc: i64,
    pub prefactor: Vec<BetaCoef>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Cplx,
    /// Magnitude of the last included order; a heuristic, not a bound.
    pub tail_estimate: f64,
}

impl<C: Coef> FrobeniusSeries<C> {
    pub fn nvars(&self) -> usize {
        self.series.nvars()
    }

    pub fn exponent_base(&self) -> &[C] {
        &self.series.base
    }

    /// Ratio offsets (k_1, …, k_{N−1}) of the monomial ∏(x_i/x_{i+1})^{k_i}.
    pub fn offset_of(n: &[i64]) -> Vec<i64> {
        let mut out = Vec::with_capacity(n.len().saturating_sub(1));
        let mut acc = 0;
        for &ni in &n[..n.len().saturating_sub(1)] {
            acc += ni;
            out.push(acc);
        }
        out
    }

    pub fn exponent_of(offset: &[i64]) -> Vec<i64> {
        let mut n = Vec::with_capacity(offset.len() + 1);
        let mut prev = 0;
        for &k in offset {
            n.push(k - prev);
            prev = k;
        }
        n.push(-prev);
        n
    }

    pub fn coeffs(&self) -> BTreeMap<Vec<i64>, C> {
        self.series.terms.iter().map(|(n, c)| (Self::offset_of(n), c.clone())).collect()
    }

    pub fn coeff(&self, offset: &[i64]) -> C {
        self.series.coeff(&Self::exponent_of(offset))
    }

    pub fn prefactor_value(&self, kappa0: f64) -> Result<f64> {
        self.prefactor.iter().try_fold(1.0, |acc, b| Ok(acc * b.eval(kappa0)?))
    }

    /// prefactor(κ₀)·Σ coeffs·monomials at 0 < x_1 < … < x_N.
    pub fn eval(&self, kappa0: f64, points: &[f64]) -> Result<SeriesValue> {
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DomainViolation("points must be strictly increasing".into()));
        }
        let (v, tail) = self.series.eval(kappa0, points)?;
        let p = self.prefactor_value(kappa0)?;
        Ok(SeriesValue { value: v * p, tail_estimate: tail * p.abs() })
    }
}

pub fn eval_series<C: Coef>(s: &FrobeniusSeries<C>, kappa0: f64, points: &[f64]) -> Result<SeriesValue> {
    s.eval(kappa0, points)
}
