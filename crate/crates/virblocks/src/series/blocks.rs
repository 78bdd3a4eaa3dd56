use std::collections::BTreeMap;

use crate::qgroup::is_admissible;
use crate::scalars::{rat_from_f64, RatFunc, Var};
use crate::virasoro::{beta_coef, h_weight, selection_polynomial};
use crate::{Error, Result};

use super::coef::{Coef, KappaMode};
use super::operator::{add_into, apply_operator_to, SeriesOperator};
use super::ops::{bsa_infinity, bsa_reduced_with};
use super::series::{FrobeniusSeries, Series};

/// Solves op·C = 0 for C = level0 + Σ_{k≥1} (level-k terms), where level k
/// means exponent shift k in variable `peel` and the leading part of `op`
/// multiplies a level-k term by `indicial(k)` and lowers the peeled exponent
/// by `drop`. Output is exact through total order `trunc`.
pub fn frobenius_solve<C: Coef>(
    level0: Series<C>,
    op: &SeriesOperator<C>,
    peel: usize,
    drop: i64,
    indicial: impl Fn(i64) -> Result<C>,
    trunc: i64,
) -> Result<Series<C>> {
    let w = level0.weights.clone();
    let cap = trunc + op.min_shift(&w);
    let mut known = level0;
    known.terms.retain(|n, _| n.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() <= trunc);
    known.exact_through = trunc;
    let mut acc = apply_operator_to(op, &known, cap)?;
    // a level-k term has total order at least k
    for k in 1..=trunc {
        let target = k - drop;
        let mut level = Series { base: known.base.clone(), weights: w.clone(), terms: BTreeMap::new(), exact_through: trunc };
        let mut denom = None;
        for (m, c) in &acc.terms {
            if m[peel] != target {
                continue;
            }
            let d = match &denom {
                Some(d) => d,
                None => denom.insert(indicial(k)?),
            };
            if d.is_zero() {
                return Err(Error::IndicialDenominatorZero(k));
            }
            let mut n = m.clone();
            n[peel] += drop;
            level.terms.insert(n, c.div(d)?.neg());
        }
        if level.terms.is_empty() {
            continue;
        }
        let delta = apply_operator_to(op, &level, cap)?;
        for (m, c) in delta.terms {
            add_into(&mut acc.terms, m, c);
        }
        known.terms.extend(level.terms);
    }
    // With exact coefficients every residual must cancel; this also checks
    // that the indicial polynomial vanishes at the starting exponent.
    if C::EXACT && !acc.terms.is_empty() {
        return Err(Error::Consistency(format!("{} residual terms left after the recursion", acc.terms.len())));
    }
    Ok(known)
}

/// Converts symbolic data into the coefficient model selected by a `KappaMode`.
pub trait Specializer<C: Coef>: Sync {
    fn conv(&self, r: &RatFunc) -> Result<C>;
}

impl Specializer<RatFunc> for KappaMode {
    fn conv(&self, r: &RatFunc) -> Result<RatFunc> {
        match self {
            KappaMode::Symbolic => Ok(r.clone()),
            KappaMode::Exact(t) => r.specialize(t),
            KappaMode::Float(k) => r.specialize(&rat_from_f64(*k)),
        }
    }
}

impl Specializer<f64> for KappaMode {
    fn conv(&self, r: &RatFunc) -> Result<f64> {
        match self {
            KappaMode::Symbolic => Err(Error::DomainViolation("floating coefficients need a numeric κ".into())),
            KappaMode::Exact(t) => r.eval_exact(t).map(|v| crate::scalars::rat_to_f64(&v)),
            KappaMode::Float(k) => r.eval_real(*k),
        }
    }
}

/// `frobenius_solve` for symbolic input data, converted to the coefficient
/// model of `mode` before the recursion runs.
pub fn solve_in<C: Coef>(
    level0: &Series,
    op: &SeriesOperator,
    peel: usize,
    drop: i64,
    indicial: impl Fn(i64) -> RatFunc,
    trunc: i64,
    mode: &KappaMode,
) -> Result<Series<C>>
where
    KappaMode: Specializer<C>,
{
    let conv = |r: &RatFunc| mode.conv(r);
    let level0 = level0.map_coef(&conv)?;
    let op = op.map_coef(&conv)?;
    frobenius_solve(level0, &op, peel, drop, |k| mode.conv(&indicial(k)), trunc)
}

fn delta(out: u32, mid: u32, inn: u32) -> RatFunc {
    &(&h_weight(out) - &h_weight(mid)) - &h_weight(inn)
}

/// Normalized series of the composed highest-weight matrix element, by
/// peeling x_1, then x_2, and so on.
/// `lambdas` = (λ_0, …, λ_N, λ_∞), `sigmas` = (ς_0, …, ς_N).
pub fn compose_blocks(lambdas: &[u32], sigmas: &[u32], trunc: i64) -> Result<FrobeniusSeries> {
    compose_blocks_in(lambdas, sigmas, trunc, &KappaMode::Symbolic)
}

/// The same recursion with κ fixed to κ₀ exactly (as the rational value of
/// the float): the Q(κ) coefficients evaluated at κ₀, at a fraction of the cost.
pub fn compose_blocks_at(lambdas: &[u32], sigmas: &[u32], trunc: i64, kappa0: f64) -> Result<FrobeniusSeries> {
    compose_blocks_in(lambdas, sigmas, trunc, &KappaMode::Exact(rat_from_f64(kappa0)))
}

/// The recursion in floating point at κ₀.
pub fn compose_blocks_f64(lambdas: &[u32], sigmas: &[u32], trunc: i64, kappa0: f64) -> Result<FrobeniusSeries<f64>> {
    compose_blocks_in(lambdas, sigmas, trunc, &KappaMode::Float(kappa0))
}

pub fn compose_blocks_in<C: Coef>(lambdas: &[u32], sigmas: &[u32], trunc: i64, mode: &KappaMode) -> Result<FrobeniusSeries<C>>
where
    KappaMode: Specializer<C>,
{
    if lambdas.len() < 3 || sigmas.len() + 1 != lambdas.len() || !is_admissible(lambdas, sigmas) {
        return Err(Error::NotAdmissible(format!("{sigmas:?} for {lambdas:?}")));
    }
    if trunc < 0 {
        return Err(Error::DomainViolation("truncation must be nonnegative".into()));
    }
    let n = lambdas.len() - 2;
    let beta = beta_coef(lambdas[1], sigmas[0], sigmas[1])?;
    let d1 = delta(sigmas[1], lambdas[1], sigmas[0]);
    if n == 1 {
        let series = Series::monomial(vec![mode.conv(&d1)?], vec![0], C::one());
        return Ok(FrobeniusSeries { series, trunc, prefactor: vec![beta] });
    }
    let mut sub_l = vec![sigmas[1]];
    sub_l.extend(&lambdas[2..]);
    let sub: FrobeniusSeries<C> = compose_blocks_in(&sub_l, &sigmas[1..], trunc, mode)?;

    let weights: Vec<i64> = (0..n as i64).rev().collect();
    let mut base = vec![mode.conv(&d1)?];
    base.extend(sub.series.base.iter().cloned());
    let terms = sub
        .series
        .terms
        .iter()
        .map(|(m, c)| {
            let mut k = vec![0];
            k.extend(m);
            (k, c.clone())
        })
        .collect();
    let level0 = Series { base, weights, terms, exact_through: trunc };

    let hs: Vec<RatFunc> = lambdas[..=n].iter().map(|&l| h_weight(l)).collect();
    let op = bsa_reduced_with(1, lambdas[1], &hs).map_coef(&|r: &RatFunc| mode.conv(r))?;
    let p = selection_polynomial(lambdas[1]);
    let h0 = h_weight(lambdas[0]);
    let hs1 = h_weight(sigmas[1]);
    let indicial = |k: i64| mode.conv(&p.eval(&h0, &(&hs1 + &RatFunc::from_int(k, Var::Kappa))));
    let series = frobenius_solve(level0, &op, 0, lambdas[1] as i64 + 1, indicial, trunc)?;
    let mut prefactor = vec![beta];
    prefactor.extend(sub.prefactor);
    Ok(FrobeniusSeries { series, trunc, prefactor })
}

/// Applies the operator at infinity for the block's labels and reports
/// whether the result vanishes through the supported order.
pub fn bsa_infinity_check(s: &FrobeniusSeries, lambdas: &[u32], lambda_inf: u32) -> Result<bool> {
    let op = bsa_infinity(lambdas, lambda_inf);
    let cap = s.series.exact_through.min(s.trunc) + op.min_shift(&s.series.weights);
    let out = apply_operator_to(&op, &s.series, cap)?;
    Ok(out.vanishes())
}
