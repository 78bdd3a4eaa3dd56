use std::collections::BTreeMap;

use crate::scalars::{binom, int, RatFunc};
use crate::{par, Error, Result};

use super::coef::Coef;
use super::series::{Series, EXACT};

/// Differential operator in the variables x_0, …, x_{N−1} (0-based).
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesOperator<C = RatFunc> {
    Identity,
    /// coef·∏ x_i^{e_i}
    Monomial { coef: C, exps: Vec<i64> },
    /// ∂/∂x_i
    Deriv(usize),
    /// (s_a x_a + s_b x_b)^n expanded in powers of x_b/x_a; needs w_b > w_a.
    Binomial { lead: usize, lead_sign: i64, sub: usize, sub_sign: i64, exp: i64 },
    Sum(Vec<SeriesOperator<C>>),
    /// Applied right to left, like function composition.
    Compose(Vec<SeriesOperator<C>>),
}

pub type Terms<C> = BTreeMap<Vec<i64>, C>;

pub(crate) fn add_into<C: Coef>(acc: &mut Terms<C>, k: Vec<i64>, c: C) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(e) => {
            *e = e.add(&c);
            if e.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, c);
        }
    }
}

fn sign_pow(s: i64, e: i64) -> i64 {
    if s < 0 && e.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

impl<C: Coef> SeriesOperator<C> {
    pub fn scalar(c: C, nvars: usize) -> Self {
        SeriesOperator::Monomial { coef: c, exps: vec![0; nvars] }
    }

    /// coef·(sign·x_i)^e
    pub fn signed_power(nvars: usize, i: usize, sign: i64, e: i64, coef: C) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        let coef = if sign_pow(sign, e) < 0 { coef.neg() } else { coef };
        SeriesOperator::Monomial { coef, exps }
    }

    pub fn then(self, first: SeriesOperator<C>) -> Self {
        match (self, first) {
            (SeriesOperator::Identity, f) => f,
            (s, SeriesOperator::Identity) => s,
            (SeriesOperator::Compose(mut a), SeriesOperator::Compose(b)) => {
                a.extend(b);
                SeriesOperator::Compose(a)
            }
            (SeriesOperator::Compose(mut a), f) => {
                a.push(f);
                SeriesOperator::Compose(a)
            }
            (s, SeriesOperator::Compose(mut b)) => {
                b.insert(0, s);
                SeriesOperator::Compose(b)
            }
            (s, f) => SeriesOperator::Compose(vec![s, f]),
        }
    }

    pub fn sum(ops: Vec<SeriesOperator<C>>) -> Self {
        let mut flat = Vec::new();
        for op in ops {
            match op {
                SeriesOperator::Sum(inner) => flat.extend(inner),
                SeriesOperator::Monomial { ref coef, .. } if coef.is_zero() => {}
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        SeriesOperator::Sum(flat)
    }

    pub fn scaled(self, c: &C, nvars: usize) -> Self {
        if *c == C::one() {
            return self;
        }
        match self {
            SeriesOperator::Monomial { coef, exps } => SeriesOperator::Monomial { coef: coef.mul(c), exps },
            SeriesOperator::Sum(v) => SeriesOperator::Sum(v.into_iter().map(|o| o.scaled(c, nvars)).collect()),
            other => SeriesOperator::scalar(c.clone(), nvars).then(other),
        }
    }

    /// Most negative change of the order Σ w_i n_i this operator can produce.
    pub fn min_shift(&self, weights: &[i64]) -> i64 {
        match self {
            SeriesOperator::Identity => 0,
            SeriesOperator::Monomial { exps, .. } => exps.iter().zip(weights).map(|(e, w)| e * w).sum(),
            SeriesOperator::Deriv(i) => -weights[*i],
            SeriesOperator::Binomial { lead, exp, .. } => exp * weights[*lead],
            SeriesOperator::Sum(v) => v.iter().map(|o| o.min_shift(weights)).min().unwrap_or(0),
            SeriesOperator::Compose(v) => v.iter().map(|o| o.min_shift(weights)).sum(),
        }
    }

    /// Same operator with every coefficient mapped through `f`.
    pub fn map_coef<D: Coef>(&self, f: &impl Fn(&C) -> Result<D>) -> Result<SeriesOperator<D>> {
        Ok(match self {
            SeriesOperator::Identity => SeriesOperator::Identity,
            SeriesOperator::Monomial { coef, exps } => SeriesOperator::Monomial { coef: f(coef)?, exps: exps.clone() },
            SeriesOperator::Deriv(i) => SeriesOperator::Deriv(*i),
            SeriesOperator::Binomial { lead, lead_sign, sub, sub_sign, exp } => {
                SeriesOperator::Binomial { lead: *lead, lead_sign: *lead_sign, sub: *sub, sub_sign: *sub_sign, exp: *exp }
            }
            SeriesOperator::Sum(v) => SeriesOperator::Sum(v.iter().map(|o| o.map_coef(f)).collect::<Result<_>>()?),
            SeriesOperator::Compose(v) => SeriesOperator::Compose(v.iter().map(|o| o.map_coef(f)).collect::<Result<_>>()?),
        })
    }

    /// Number of generator nodes; a size measure for tests and reports.
    pub fn size(&self) -> usize {
        match self {
            SeriesOperator::Sum(v) | SeriesOperator::Compose(v) => v.iter().map(|o| o.size()).sum(),
            _ => 1,
        }
    }
}

fn order(n: &[i64], w: &[i64]) -> i64 {
    n.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Applies `op` to a finite set of terms, keeping output orders ≤ cap.
fn apply_terms<C: Coef>(op: &SeriesOperator<C>, terms: &Terms<C>, base: &[C], w: &[i64], cap: i64) -> Terms<C> {
    let mut out = Terms::new();
    match op {
        SeriesOperator::Identity => {
            for (n, c) in terms {
                if order(n, w) <= cap {
                    out.insert(n.clone(), c.clone());
                }
            }
        }
        SeriesOperator::Monomial { coef, exps } => {
            for (n, c) in terms {
                let m: Vec<i64> = n.iter().zip(exps).map(|(a, b)| a + b).collect();
                if order(&m, w) <= cap {
                    add_into(&mut out, m, c.mul(coef));
                }
            }
        }
        SeriesOperator::Deriv(i) => {
            for (n, c) in terms {
                let mut m = n.clone();
                m[*i] -= 1;
                if order(&m, w) <= cap {
                    let f = base[*i].add(&C::from_int(n[*i]));
                    add_into(&mut out, m, c.mul(&f));
                }
            }
        }
        SeriesOperator::Binomial { lead, lead_sign, sub, sub_sign, exp } => {
            assert!(w[*sub] > w[*lead], "binomial expansion needs a smaller sub variable");
            assert!(*exp >= 0 || cap < EXACT / 2, "infinite binomial expansion needs a finite order cap");
            for (n, c) in terms {
                let mut k = 0i64;
                loop {
                    if *exp >= 0 && k > *exp {
                        break;
                    }
                    let mut m = n.clone();
                    m[*lead] += exp - k;
                    m[*sub] += k;
                    if order(&m, w) > cap {
                        break;
                    }
                    let s = sign_pow(*lead_sign, exp - k) * sign_pow(*sub_sign, k);
                    let b = C::from_rat(&(binom(*exp, k) * int(s)));
                    add_into(&mut out, m, c.mul(&b));
                    k += 1;
                }
            }
        }
        SeriesOperator::Sum(v) => {
            for o in v {
                for (m, c) in apply_terms(o, terms, base, w, cap) {
                    add_into(&mut out, m, c);
                }
            }
        }
        SeriesOperator::Compose(v) => {
            // caps for intermediate results: what the remaining outer ops can still lower
            let mut caps = vec![cap; v.len()];
            for i in 1..v.len() {
                caps[i] = caps[i - 1] - v[i - 1].min_shift(w);
            }
            let mut cur = terms.clone();
            for i in (0..v.len()).rev() {
                cur = apply_terms(&v[i], &cur, base, w, caps[i]);
            }
            out = cur;
        }
    }
    out
}

/// Applies `op` to each term separately (with unit coefficient, so the
/// operator arithmetic stays cheap) and recombines.
pub fn apply_operator_to<C: Coef>(op: &SeriesOperator<C>, s: &Series<C>, cap: i64) -> Result<Series<C>> {
    let shift = op.min_shift(&s.weights);
    let need = cap - shift;
    if need > s.exact_through {
        return Err(Error::TruncationUnderflow { requested: cap, supported: s.exact_through + shift });
    }
    let items: Vec<(&Vec<i64>, &C)> = s.terms.iter().filter(|(n, _)| order(n, &s.weights) <= need).collect();
    let kernels = par::map(&items, |(n, _)| {
        let unit = Terms::from([((*n).clone(), C::one())]);
        apply_terms(op, &unit, &s.base, &s.weights, cap)
    });
    let mut out = Terms::new();
    for ((_, c), kern) in items.iter().zip(kernels) {
        for (m, k) in kern {
            add_into(&mut out, m, k.mul(c));
        }
    }
    Ok(Series { base: s.base.clone(), weights: s.weights.clone(), terms: out, exact_through: cap })
}

/// Applies `op` at the largest output order the input supports.
pub fn apply_operator<C: Coef>(op: &SeriesOperator<C>, s: &Series<C>) -> Result<Series<C>> {
    let cap = s.exact_through + op.min_shift(&s.weights);
    apply_operator_to(op, s, cap)
}
