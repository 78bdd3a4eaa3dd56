//! Numerical check of operator associativity: the regime-A block against the
//! 6j-weighted sum of regime-B blocks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::qgroup::{in_selection, selection_set, sixj};
use crate::scalars::{rat_from_f64, Cplx, RatFunc, Var};
use crate::series::{
    apply_operator, bsa_hatted, compose_blocks_in, solve_in, Coef, FrobeniusSeries, KappaMode, Series, SeriesOperator, SeriesValue, Specializer,
};
use crate::virasoro::{beta_coef, h_weight, selection_polynomial};
use crate::{par, Error, Result};

pub mod descendant;

pub use descendant::{descendant_assoc_check, Insertion, Slot};

/// (λ_0, λ_1, λ_2, λ_∞)
pub type Labels = [u32; 4];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CplxJson {
    pub re: f64,
    pub im: f64,
}

impl From<Cplx> for CplxJson {
    fn from(z: Cplx) -> Self {
        CplxJson { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssocReport {
    pub labels: [u32; 4],
    pub sigma: u32,
    pub insertions: Vec<String>,
    pub point: [f64; 2],
    pub kappa0: f64,
    pub trunc: [i64; 2],
    pub value_a: CplxJson,
    pub value_b: CplxJson,
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// Heuristic: magnitude of the last included order, per regime.
    pub tail_estimate: [f64; 2],
    pub sixj_values: BTreeMap<u32, CplxJson>,
    pub tolerance: f64,
    pub verdict: bool,
}

/// ⟨w', Y(w_2, x_2)Y(w_1, x_1)w_0⟩ with intermediate weight ς.
pub fn expand_regime_a(labels: Labels, sigma: u32, trunc: i64) -> Result<FrobeniusSeries> {
    expand_regime_a_in(labels, sigma, trunc, &KappaMode::Symbolic)
}

pub fn expand_regime_a_in<C: Coef>(labels: Labels, sigma: u32, trunc: i64, mode: &KappaMode) -> Result<FrobeniusSeries<C>>
where
    KappaMode: Specializer<C>,
{
    let [l0, l1, l2, linf] = labels;
    if !in_selection(sigma, l0, l1) || !in_selection(linf, sigma, l2) {
        return Err(Error::SelectionRuleViolation(format!("intermediate {sigma} for {labels:?}")));
    }
    compose_blocks_in(&labels, &[l0, sigma, linf], trunc, mode)
}

/// ⟨w', Y(Y(w_2, y)w_1, x)w_0⟩ with intermediate weight μ, in the variables
/// (y, x); offsets count powers of y/x.
pub fn expand_regime_b(labels: Labels, mu: u32, trunc: i64) -> Result<FrobeniusSeries> {
    expand_regime_b_in(labels, mu, trunc, &KappaMode::Symbolic)
}

pub fn expand_regime_b_in<C: Coef>(labels: Labels, mu: u32, trunc: i64, mode: &KappaMode) -> Result<FrobeniusSeries<C>>
where
    KappaMode: Specializer<C>,
{
    let [l0, l1, l2, linf] = labels;
    if !in_selection(mu, l1, l2) || !in_selection(mu, l0, linf) {
        return Err(Error::SelectionRuleViolation(format!("intermediate {mu} for {labels:?}")));
    }
    let (h0, h1, h2, hm, hinf) = (h_weight(l0), h_weight(l1), h_weight(l2), h_weight(mu), h_weight(linf));
    let d_inner = &(&hm - &h2) - &h1;
    let d_outer = &(&hinf - &hm) - &h0;
    let level0 = Series::monomial(vec![d_inner, d_outer], vec![1, 0], RatFunc::one(Var::Kappa));
    let op = bsa_hatted(l2, &h0, &h1);
    let p = selection_polynomial(l2);
    let indicial = |k: i64| p.eval(&h1, &(&hm + &RatFunc::from_int(k, Var::Kappa)));
    let series = solve_in(&level0, &op, 0, l2 as i64 + 1, indicial, trunc, mode)?;
    let prefactor = vec![beta_coef(l2, l1, mu)?, beta_coef(mu, l0, linf)?];
    Ok(FrobeniusSeries { series, trunc, prefactor })
}

/// Coefficient model for the numeric checks: exact rationals at κ₀, or
/// floating point. Both evaluate the same truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Arith {
    #[default]
    Exact,
    Float,
}

#[allow(clippy::too_many_arguments)]
fn value_in<C: Coef>(
    regime_b: bool,
    labels: Labels,
    channel: u32,
    trunc: i64,
    mode: &KappaMode,
    kappa0: f64,
    points: &[f64],
    op: Option<&SeriesOperator>,
) -> Result<SeriesValue>
where
    KappaMode: Specializer<C>,
{
    let mut s: FrobeniusSeries<C> =
        if regime_b { expand_regime_b_in(labels, channel, trunc, mode)? } else { expand_regime_a_in(labels, channel, trunc, mode)? };
    if let Some(op) = op {
        let op = op.map_coef(&|r: &RatFunc| mode.conv(r))?;
        s.series = apply_operator(&op, &s.series)?;
    }
    s.eval(kappa0, points)
}

/// Block value in one regime, optionally after a reduced descendant operator.
#[allow(clippy::too_many_arguments)]
pub(crate) fn block_value(
    regime_b: bool,
    labels: Labels,
    channel: u32,
    trunc: i64,
    kappa0: f64,
    arith: Arith,
    points: &[f64],
    op: Option<&SeriesOperator>,
) -> Result<SeriesValue> {
    match arith {
        Arith::Exact => {
            let mode = KappaMode::Exact(rat_from_f64(kappa0));
            value_in::<RatFunc>(regime_b, labels, channel, trunc, &mode, kappa0, points, op)
        }
        Arith::Float => value_in::<f64>(regime_b, labels, channel, trunc, &KappaMode::Float(kappa0), kappa0, points, op),
    }
}

/// The hatted BSA operator that annihilates the regime-B series.
pub fn regime_b_operator(labels: Labels) -> SeriesOperator {
    bsa_hatted(labels[2], &h_weight(labels[0]), &h_weight(labels[1]))
}

/// Intermediate weights μ of regime B.
pub fn regime_b_channels(labels: Labels) -> Vec<u32> {
    let [l0, l1, l2, linf] = labels;
    selection_set(l1, l2).into_iter().filter(|&m| in_selection(m, l0, linf)).collect()
}

/// 6j weights at q₀ = e^{4πi/κ₀}, keyed by μ.
pub fn sixj_values(labels: Labels, sigma: u32, kappa0: f64) -> Result<BTreeMap<u32, Cplx>> {
    let [l0, l1, l2, linf] = labels;
    let q0 = Cplx::from_polar(1.0, 4.0 * std::f64::consts::PI / kappa0);
    let mut out = BTreeMap::new();
    for mu in regime_b_channels(labels) {
        out.insert(mu, sixj(linf, l2, l1, l0, sigma, mu)?.eval(q0)?);
    }
    Ok(out)
}

pub(crate) fn check_point(point: [f64; 2]) -> Result<()> {
    let [x1, x2] = point;
    if !(0.0 < x2 - x1 && x2 - x1 < x1) {
        return Err(Error::DomainViolation(format!("need 0 < x2 − x1 < x1, got ({x1}, {x2})")));
    }
    Ok(())
}

/// Sum in increasing-|value| order, so the result does not depend on how the
/// terms were produced.
pub fn sorted_sum(mut vals: Vec<Cplx>) -> Cplx {
    vals.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.re.total_cmp(&b.re)).then(a.im.total_cmp(&b.im)));
    vals.into_iter().fold(Cplx::new(0.0, 0.0), |acc, v| acc + v)
}

pub struct Compared {
    pub value_a: Cplx,
    pub value_b: Cplx,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

pub fn compare(a: Cplx, b: Cplx) -> Compared {
    let abs_diff = (a - b).norm();
    let rel_diff = abs_diff / a.norm().max(b.norm()).max(1e-300);
    Compared { value_a: a, value_b: b, abs_diff, rel_diff }
}

/// Numeric settings shared by the checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckParams {
    pub point: [f64; 2],
    pub kappa0: f64,
    pub trunc: i64,
    pub tol: f64,
    pub arith: Arith,
}

/// Operators applied to the regime-A and regime-B series before evaluation.
pub(crate) struct Reduced<'a> {
    pub a: &'a SeriesOperator,
    pub b: &'a SeriesOperator,
    pub names: Vec<String>,
}

pub(crate) fn run_check(
    labels: Labels,
    sigma: u32,
    p: &CheckParams,
    weights: &BTreeMap<u32, Cplx>,
    reduced: Option<Reduced>,
) -> Result<AssocReport> {
    check_point(p.point)?;
    let [x1, x2] = p.point;
    let (op_a, op_b) = match &reduced {
        Some(r) => (Some(r.a), Some(r.b)),
        None => (None, None),
    };
    let a = block_value(false, labels, sigma, p.trunc, p.kappa0, p.arith, &[x1, x2], op_a)?;
    let channels = regime_b_channels(labels);
    let branches = par::map(&channels, |&mu| -> Result<(Cplx, f64)> {
        let v = block_value(true, labels, mu, p.trunc, p.kappa0, p.arith, &[x2 - x1, x1], op_b)?;
        let w = weights.get(&mu).copied().unwrap_or_default();
        Ok((w * v.value, w.norm() * v.tail_estimate))
    });
    let mut terms = Vec::new();
    let mut tail_b = 0.0;
    for b in branches {
        let (v, t) = b?;
        terms.push(v);
        tail_b += t;
    }
    let c = compare(a.value, sorted_sum(terms));
    Ok(AssocReport {
        labels,
        sigma,
        insertions: reduced.map(|r| r.names).unwrap_or_default(),
        point: p.point,
        kappa0: p.kappa0,
        trunc: [p.trunc, p.trunc],
        value_a: c.value_a.into(),
        value_b: c.value_b.into(),
        abs_diff: c.abs_diff,
        rel_diff: c.rel_diff,
        tail_estimate: [a.tail_estimate, tail_b],
        sixj_values: weights.iter().map(|(&m, &z)| (m, z.into())).collect(),
        tolerance: p.tol,
        verdict: c.rel_diff <= p.tol,
    })
}

/// Full check, with the 6j weights supplied by the caller (the negative
/// controls pass corrupted weights here).
pub fn assoc_check_with(labels: Labels, sigma: u32, params: &CheckParams, weights: &BTreeMap<u32, Cplx>) -> Result<AssocReport> {
    run_check(labels, sigma, params, weights, None)
}

/// Regime A against the 6j-weighted regime-B sum, with exact coefficients at κ₀.
pub fn assoc_check(labels: Labels, sigma: u32, point: [f64; 2], kappa0: f64, trunc: i64, tol: f64) -> Result<AssocReport> {
    assoc_check_arith(labels, sigma, point, kappa0, trunc, tol, Arith::Exact)
}

pub fn assoc_check_arith(
    labels: Labels,
    sigma: u32,
    point: [f64; 2],
    kappa0: f64,
    trunc: i64,
    tol: f64,
    arith: Arith,
) -> Result<AssocReport> {
    let weights = sixj_values(labels, sigma, kappa0)?;
    assoc_check_with(labels, sigma, &CheckParams { point, kappa0, trunc, tol, arith }, &weights)
}

/// All label quadruples with entries ≤ `max` and every admissible ς for each.
pub fn admissible_cases(max: u32) -> Vec<(Labels, u32)> {
    let mut out = Vec::new();
    for l0 in 0..=max {
        for l1 in 0..=max {
            for l2 in 0..=max {
                for linf in 0..=max {
                    for s in selection_set(l0, l1) {
                        if in_selection(linf, s, l2) {
                            out.push(([l0, l1, l2, linf], s));
                        }
                    }
                }
            }
        }
    }
    out
}
