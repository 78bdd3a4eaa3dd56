use crate::scalars::{int, RatFunc, Var};
use crate::virasoro::{bsa_coefficient, compositions, h_weight};

use super::operator::SeriesOperator;
use SeriesOperator::{Binomial, Deriv};

fn kint(n: i64) -> RatFunc {
    RatFunc::from_int(n, Var::Kappa)
}

/// (x_a − x_b)^e, expanded around the larger of the two points.
pub(crate) fn difference_power(a: usize, b: usize, e: i64) -> SeriesOperator {
    if a > b {
        Binomial { lead: a, lead_sign: 1, sub: b, sub_sign: -1, exp: e }
    } else {
        Binomial { lead: b, lead_sign: -1, sub: a, sub_sign: 1, exp: e }
    }
}

/// The translation-reduced Witt operator of slot j (1-based) with the
/// origin insertion specialized to 0; `hs` = (h_0, h_1, …, h_N).
pub fn witt_reduced(j: usize, n: i64, hs: &[RatFunc]) -> SeriesOperator {
    let nv = hs.len() - 1;
    let xj = j - 1;
    let mut terms = Vec::new();
    for i in 0..nv {
        terms.push(SeriesOperator::signed_power(nv, xj, -1, n + 1, kint(1)).then(Deriv(i)));
    }
    terms.push(SeriesOperator::signed_power(nv, xj, -1, n, hs[0].scale(&int(-(1 + n)))));
    for i in 0..nv {
        if i == xj {
            continue;
        }
        terms.push(difference_power(i, xj, n + 1).scaled(&kint(-1), nv).then(Deriv(i)));
        let c = hs[i + 1].scale(&int(-(1 + n)));
        if !c.is_zero() {
            terms.push(difference_power(i, xj, n).scaled(&c, nv));
        }
    }
    SeriesOperator::sum(terms)
}

/// Σ_compositions coef(λ, p)·W(−p_1)∘⋯∘W(−p_k).
pub fn bsa_from(lambda: u32, nvars: usize, witt: impl Fn(i64) -> SeriesOperator) -> SeriesOperator {
    let mut terms = Vec::new();
    for p in compositions(lambda + 1) {
        let mut op = SeriesOperator::Identity;
        for &pu in &p {
            op = op.then(witt(-(pu as i64)));
        }
        terms.push(op.scaled(&bsa_coefficient(lambda, &p), nvars));
    }
    SeriesOperator::sum(terms)
}

/// The BSA operator of slot j for the labels (λ_0, …, λ_N).
pub fn bsa_reduced(j: usize, lambdas: &[u32]) -> SeriesOperator {
    let hs: Vec<RatFunc> = lambdas.iter().map(|&l| h_weight(l)).collect();
    bsa_reduced_with(j, lambdas[j], &hs)
}

pub fn bsa_reduced_with(j: usize, lambda_j: u32, hs: &[RatFunc]) -> SeriesOperator {
    bsa_from(lambda_j, hs.len() - 1, |n| witt_reduced(j, n, hs))
}

/// Σ_i (x_i^{p+1}∂_i + (p+1)h_i x_i^p), with `hs` = (h_1, …, h_N).
pub fn witt_infinity(p: i64, hs: &[RatFunc]) -> SeriesOperator {
    let nv = hs.len();
    let mut terms = Vec::new();
    for (i, h) in hs.iter().enumerate() {
        terms.push(SeriesOperator::signed_power(nv, i, 1, p + 1, kint(1)).then(Deriv(i)));
        let c = h.scale(&int(p + 1));
        if !c.is_zero() {
            terms.push(SeriesOperator::signed_power(nv, i, 1, p, c));
        }
    }
    SeriesOperator::sum(terms)
}

/// Operator at infinity for the labels (λ_1, …, λ_N) and λ_∞.
pub fn bsa_infinity(lambdas: &[u32], lambda_inf: u32) -> SeriesOperator {
    let hs: Vec<RatFunc> = lambdas.iter().map(|&l| h_weight(l)).collect();
    bsa_from(lambda_inf, hs.len(), |n| witt_infinity(-n, &hs))
}

/// Hatted Witt operator in (y, x) = (variable 0, variable 1):
/// (−x−y)^n((−x−y)∂_x − (1+n)h_0) − (−y)^n((−y)(∂_x−∂_y) + (1+n)h_1).
pub fn witt_hatted(n: i64, h0: &RatFunc, h1: &RatFunc) -> SeriesOperator {
    let bin = |e: i64| Binomial { lead: 1, lead_sign: -1, sub: 0, sub_sign: -1, exp: e };
    let mut terms = vec![bin(n + 1).then(Deriv(1))];
    let c0 = h0.scale(&int(-(1 + n)));
    if !c0.is_zero() {
        terms.push(bin(n).scaled(&c0, 2));
    }
    terms.push(SeriesOperator::signed_power(2, 0, -1, n + 1, kint(-1)).then(Deriv(1)));
    terms.push(SeriesOperator::signed_power(2, 0, -1, n + 1, kint(1)).then(Deriv(0)));
    terms.push(SeriesOperator::signed_power(2, 0, -1, n, h1.scale(&int(-(1 + n)))));
    SeriesOperator::sum(terms)
}

/// The hatted BSA operator for the inner pair (λ_1, λ_2) with λ_0 at the origin.
pub fn bsa_hatted(lambda2: u32, h0: &RatFunc, h1: &RatFunc) -> SeriesOperator {
    bsa_from(lambda2, 2, |n| witt_hatted(n, h0, h1))
}
