use std::collections::BTreeMap;

use crate::scalars::linalg::{solve, Matrix};
use crate::scalars::{RatFunc, Var};
use crate::{Error, Result};

use super::cg::{cg_embed, in_selection, selection_set};
use super::vector::QGVector;

/// Key (σ, λ3, λ2, λ1, κ, ν).
pub type SixJKey = (u32, u32, u32, u32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SixJTable {
    pub entries: BTreeMap<SixJKey, RatFunc>,
}

impl SixJTable {
    pub fn get(&self, key: SixJKey) -> Option<&RatFunc> {
        self.entries.get(&key)
    }
}

/// ν ∈ E(σ,λ1) ∩ E(λ3,λ2).
pub fn nu_range(sigma: u32, l3: u32, l2: u32, l1: u32) -> Vec<u32> {
    selection_set(sigma, l1).into_iter().filter(|&nu| in_selection(nu, l3, l2)).collect()
}

/// κ ∈ E(σ,λ3) ∩ E(λ2,λ1).
pub fn kappa_range(sigma: u32, l3: u32, l2: u32, l1: u32) -> Vec<u32> {
    selection_set(sigma, l3).into_iter().filter(|&k| in_selection(k, l2, l1)).collect()
}

/// (id⊗ι_{κ;λ2,λ1})∘ι_{σ;λ3,κ}(e_j).
pub fn lhs_vector(sigma: u32, l3: u32, l2: u32, l1: u32, kidx: u32, j: usize) -> Result<QGVector> {
    let outer = cg_embed(sigma, l3, kidx)?;
    let inner = cg_embed(kidx, l2, l1)?;
    Ok(inner.apply_at(&outer.images[j], 1))
}

/// (ι_{ν;λ3,λ2}⊗id)∘ι_{σ;ν,λ1}(e_j).
pub fn rhs_vector(sigma: u32, l3: u32, l2: u32, l1: u32, nu: u32, j: usize) -> Result<QGVector> {
    let outer = cg_embed(sigma, nu, l1)?;
    let inner = cg_embed(nu, l3, l2)?;
    Ok(inner.apply_at(&outer.images[j], 0))
}

/// All 6j symbols with the given (σ, λ3, λ2, λ1), solved exactly on e_0.
pub fn sixj_table(sigma: u32, l3: u32, l2: u32, l1: u32) -> Result<SixJTable> {
    let nus = nu_range(sigma, l3, l2, l1);
    let kappas = kappa_range(sigma, l3, l2, l1);
    let mut table = SixJTable::default();
    if kappas.is_empty() {
        return Ok(table);
    }
    let basis: Vec<QGVector> = nus.iter().map(|&nu| rhs_vector(sigma, l3, l2, l1, nu, 0)).collect::<Result<_>>()?;
    let rows = QGVector::weight_indices(&[l3, l2, l1], sigma as i64);
    let mat: Matrix = rows.iter().map(|r| basis.iter().map(|b| b.get(r)).collect()).collect();
    for &k in &kappas {
        let lhs = lhs_vector(sigma, l3, l2, l1, k, 0)?;
        let b: Vec<RatFunc> = rows.iter().map(|r| lhs.get(r)).collect();
        let x = solve(&mat, &b, Var::Q)
            .ok_or_else(|| Error::SingularBasis(format!("6j system ({sigma},{l3},{l2},{l1};{k})")))?;
        for (&nu, c) in nus.iter().zip(x) {
            table.entries.insert((sigma, l3, l2, l1, k, nu), c);
        }
    }
    Ok(table)
}

pub fn sixj(sigma: u32, l3: u32, l2: u32, l1: u32, kidx: u32, nu: u32) -> Result<RatFunc> {
    if !in_selection(kidx, sigma, l3) || !in_selection(kidx, l2, l1) {
        return Err(Error::SelectionRuleViolation(format!("κ={kidx} for ({sigma},{l3},{l2},{l1})")));
    }
    if !in_selection(nu, sigma, l1) || !in_selection(nu, l3, l2) {
        return Err(Error::SelectionRuleViolation(format!("ν={nu} for ({sigma},{l3},{l2},{l1})")));
    }
    let t = sixj_table(sigma, l3, l2, l1)?;
    Ok(t.entries[&(sigma, l3, l2, l1, kidx, nu)].clone())
}
