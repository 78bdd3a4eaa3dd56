use crate::scalars::linalg::{inverse, Matrix};
use crate::scalars::{q_factorial, RatFunc, Var};
use crate::{Error, Result};

use super::vector::{act_generator, Gen, QGVector};

/// E(μ, λ) = {σ : σ+μ+λ even, |μ−λ| ≤ σ ≤ μ+λ}, ascending.
pub fn selection_set(mu: u32, lambda: u32) -> Vec<u32> {
    let lo = mu.abs_diff(lambda);
    (lo..=mu + lambda).step_by(2).collect()
}

pub fn in_selection(sigma: u32, mu: u32, lambda: u32) -> bool {
    sigma >= mu.abs_diff(lambda) && sigma <= mu + lambda && (sigma + mu + lambda).is_multiple_of(2)
}

/// A linear map between tensor products, stored by images of basis vectors
/// (domain basis in lexicographic multi-index order).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub domain: Vec<u32>,
    pub codomain: Vec<u32>,
    pub images: Vec<QGVector>,
}

impl LinearMap {
    fn image_of(&self, index: &[u32]) -> &QGVector {
        // lexicographic position of index within the domain
        let mut pos = 0usize;
        for (j, l) in index.iter().zip(&self.domain) {
            pos = pos * (*l as usize + 1) + *j as usize;
        }
        &self.images[pos]
    }

    pub fn apply(&self, v: &QGVector) -> QGVector {
        self.apply_at(v, 0)
    }

    /// Applies the map to factors `pos..pos+domain.len()` of `v`, identity elsewhere.
    pub fn apply_at(&self, v: &QGVector, pos: usize) -> QGVector {
        let shape = v.shape();
        let k = self.domain.len();
        assert_eq!(&shape[pos..pos + k], &self.domain[..], "map domain does not match tensor factors");
        let mut new_shape = shape[..pos].to_vec();
        new_shape.extend(&self.codomain);
        new_shape.extend(&shape[pos + k..]);
        let mut out = QGVector::zero(&new_shape);
        for (idx, c) in v.entries() {
            let img = self.image_of(&idx[pos..pos + k]);
            for (j, d) in img.entries() {
                let mut ni = idx[..pos].to_vec();
                ni.extend(j);
                ni.extend(&idx[pos + k..]);
                out.add_term(ni, c * d);
            }
        }
        out
    }

    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        assert_eq!(first.codomain, self.domain);
        LinearMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            images: first.images.iter().map(|v| self.apply(v)).collect(),
        }
    }
}

fn q_minus_qinv() -> RatFunc {
    // (q² − 1)/q
    &RatFunc::t_pow(1, Var::Q) - &RatFunc::t_pow(-1, Var::Q)
}

/// ι_{σ;λ,μ}(e_0), the explicit highest weight vector of weight σ in M_λ⊗M_μ.
fn cg_top(sigma: u32, lambda: u32, mu: u32) -> QGVector {
    let l = (lambda + mu - sigma) / 2;
    let shape = [lambda, mu];
    let mut v = QGVector::zero(&shape);
    let norm = (&q_factorial(mu) * &q_factorial(lambda)).inv().expect("nonzero");
    let denom = q_minus_qinv().pow(l as i64).inv().expect("nonzero");
    for j in 0..=l {
        let i = l - j;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let num = &q_factorial(mu - j) * &q_factorial(lambda - i);
        let fac = (&q_factorial(i) * &q_factorial(j)).inv().expect("nonzero");
        let qp = RatFunc::t_pow(j as i64 * (mu as i64 + 1 - j as i64), Var::Q);
        let c = &(&(&(&num * &fac) * &norm) * &qp) * &denom;
        v.add_term(vec![i, j], c.scale(&crate::scalars::int(sign)));
    }
    v
}

/// Clebsch–Gordan embedding M_σ → M_λ⊗M_μ; column j is F^j of column 0.
pub fn cg_embed(sigma: u32, lambda: u32, mu: u32) -> Result<LinearMap> {
    if !in_selection(sigma, mu, lambda) {
        return Err(Error::SelectionRuleViolation(format!("{sigma} not in E({mu},{lambda})")));
    }
    let mut cols = vec![cg_top(sigma, lambda, mu)];
    for _ in 0..sigma {
        let next = act_generator(Gen::F, cols.last().unwrap());
        cols.push(next);
    }
    Ok(LinearMap { domain: vec![sigma], codomain: vec![lambda, mu], images: cols })
}

/// The projection π̄ : M_λ⊗M_μ → M_σ with π̄∘ι_σ = id, vanishing on the other
/// isotypic components. Computed weight space by weight space.
pub fn cg_project(lambda: u32, mu: u32, sigma: u32) -> Result<LinearMap> {
    if !in_selection(sigma, mu, lambda) {
        return Err(Error::SelectionRuleViolation(format!("{sigma} not in E({mu},{lambda})")));
    }
    let shape = vec![lambda, mu];
    let sigmas = selection_set(mu, lambda);
    let embeds: Vec<LinearMap> = sigmas.iter().map(|&s| cg_embed(s, lambda, mu)).collect::<Result<_>>()?;
    let all = QGVector::all_indices(&shape);
    let mut images = vec![QGVector::zero(&[sigma]); all.len()];
    for m in 0..=(lambda + mu) {
        let w = (lambda + mu) as i64 - 2 * m as i64;
        let basis: Vec<Vec<u32>> = all.iter().filter(|i| i[0] + i[1] == m).cloned().collect();
        // columns: ι_{σ'}(e_{j'}) for every σ' reaching weight w
        let present: Vec<(usize, u32)> = sigmas
            .iter()
            .enumerate()
            .filter(|(_, &s)| s as i64 >= w.abs())
            .map(|(k, &s)| (k, ((s as i64 - w) / 2) as u32))
            .collect();
        let Some(row_of_sigma) = present.iter().position(|(k, _)| sigmas[*k] == sigma) else {
            continue;
        };
        let mat: Matrix = basis
            .iter()
            .map(|b| present.iter().map(|(k, j)| embeds[*k].images[*j as usize].get(b)).collect())
            .collect();
        let inv = inverse(&mat, Var::Q)
            .ok_or_else(|| Error::SingularBasis(format!("weight space {w} of M_{lambda}⊗M_{mu}")))?;
        let jsig = present[row_of_sigma].1;
        for (c, b) in basis.iter().enumerate() {
            let coef = inv[row_of_sigma][c].clone();
            let pos = all.iter().position(|a| a == b).unwrap();
            images[pos].add_term(vec![jsig], coef);
        }
    }
    Ok(LinearMap { domain: shape, codomain: vec![sigma], images })
}

/// Canonical projector p = ι∘π̄ on M_λ⊗M_μ.
pub fn cg_projector(lambda: u32, mu: u32, sigma: u32) -> Result<LinearMap> {
    Ok(cg_embed(sigma, lambda, mu)?.compose(&cg_project(lambda, mu, sigma)?))
}
