use std::collections::BTreeMap;

use crate::qgroup::in_selection;
use crate::scalars::{int, RatFunc, Var};

use super::singular::{bsa_coefficient, compositions};
use super::verma::h_weight;

/// P_λ(h_in, h_out) as a map (i, j) ↦ coefficient of h_in^i h_out^j.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionPoly {
    pub lambda: u32,
    pub coeffs: BTreeMap<(u32, u32), RatFunc>,
}

type Biv = BTreeMap<(u32, u32), RatFunc>;

fn biv_mul(a: &Biv, b: &Biv) -> Biv {
    let mut out: Biv = BTreeMap::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            let e = out.entry((i + k, j + l)).or_insert_with(|| RatFunc::zero(Var::Kappa));
            *e = &*e + &(x * y);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn selection_polynomial(lambda: u32) -> SelectionPoly {
    let hl = h_weight(lambda);
    let mut total: Biv = BTreeMap::new();
    for p in compositions(lambda + 1) {
        let mut prod: Biv = BTreeMap::from([((0, 0), bsa_coefficient(lambda, &p))]);
        for j in 0..p.len() {
            let tail: u32 = p[j + 1..].iter().sum();
            let sign = if p[j] % 2 == 0 { 1 } else { -1 };
            // (−1)^{p_j}(Σ_{i>j}p_i + h_λ − h_out + p_j h_in)
            let constant = (&RatFunc::from_int(tail as i64, Var::Kappa) + &hl).scale(&int(sign));
            let factor: Biv = [
                ((0, 0), constant),
                ((0, 1), RatFunc::from_int(-sign, Var::Kappa)),
                ((1, 0), RatFunc::from_int(sign * p[j] as i64, Var::Kappa)),
            ]
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
            prod = biv_mul(&prod, &factor);
        }
        for (k, c) in prod {
            let e = total.entry(k).or_insert_with(|| RatFunc::zero(Var::Kappa));
            *e = &*e + &c;
        }
    }
    total.retain(|_, c| !c.is_zero());
    SelectionPoly { lambda, coeffs: total }
}

impl SelectionPoly {
    pub fn eval(&self, h_in: &RatFunc, h_out: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(Var::Kappa);
        for (&(i, j), c) in &self.coeffs {
            acc = &acc + &(&(c * &h_in.pow(i as i64)) * &h_out.pow(j as i64));
        }
        acc
    }

    /// Coefficients in h_out (ascending) after substituting h_in.
    pub fn in_h_out(&self, h_in: &RatFunc) -> Vec<RatFunc> {
        let deg = self.coeffs.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut out = vec![RatFunc::zero(Var::Kappa); deg + 1];
        for (&(i, j), c) in &self.coeffs {
            out[j as usize] = &out[j as usize] + &(c * &h_in.pow(i as i64));
        }
        out
    }

    pub fn degree_h_out(&self) -> u32 {
        self.coeffs.keys().map(|k| k.1).max().unwrap_or(0)
    }
}

/// An intertwiner Q_λ ⊗ Q_μ → Q_ν exists iff ν ∈ E(λ, μ).
pub fn fusion_allowed(lambda: u32, mu: u32, nu: u32) -> bool {
    in_selection(nu, lambda, mu)
}

pub fn fusion_set(lambda: u32, mu: u32) -> Vec<u32> {
    crate::qgroup::selection_set(lambda, mu)
}
