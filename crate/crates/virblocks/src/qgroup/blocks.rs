use crate::scalars::linalg::{nullspace, Matrix};
use crate::scalars::{RatFunc, Var};
use crate::{Error, Result};

use super::cg::{cg_embed, in_selection};
use super::vector::{act_generator, Gen, QGVector};

/// Basis of Ker(E) ∩ Ker(K − q^σ) in the tensor product of the given shape.
pub fn highest_weight_space(shape: &[u32], sigma: u32) -> Vec<QGVector> {
    let src = QGVector::weight_indices(shape, sigma as i64);
    if src.is_empty() {
        return Vec::new();
    }
    let dst = QGVector::weight_indices(shape, sigma as i64 + 2);
    let images: Vec<QGVector> = src.iter().map(|i| act_generator(Gen::E, &QGVector::basis(shape, i))).collect();
    let mat: Matrix = dst.iter().map(|d| images.iter().map(|v| v.get(d)).collect()).collect();
    let kernel = if dst.is_empty() {
        // E vanishes identically on this weight space
        (0..src.len())
            .map(|k| (0..src.len()).map(|c| if c == k { RatFunc::one(Var::Q) } else { RatFunc::zero(Var::Q) }).collect())
            .collect()
    } else {
        nullspace(&mat, src.len(), Var::Q)
    };
    kernel
        .into_iter()
        .map(|x| {
            let mut v = QGVector::zero(shape);
            for (i, c) in src.iter().zip(x) {
                v.add_term(i.clone(), c);
            }
            v
        })
        .collect()
}

/// λ̲ = (λ_0, …, λ_N, λ_∞), ς̲ = (ς_0, …, ς_N).
pub fn is_admissible(lambdas: &[u32], sigmas: &[u32]) -> bool {
    if lambdas.len() < 3 || sigmas.len() + 1 != lambdas.len() {
        return false;
    }
    let n = sigmas.len() - 1;
    sigmas[0] == lambdas[0]
        && sigmas[n] == lambdas[n + 1]
        && (1..=n).all(|j| in_selection(lambdas[j], sigmas[j], sigmas[j - 1]))
}

/// All λ̲-admissible sequences, in lexicographic order.
pub fn admissible_sequences(lambdas: &[u32]) -> Vec<Vec<u32>> {
    let n = lambdas.len() - 2;
    let mut paths = vec![vec![lambdas[0]]];
    for &lj in &lambdas[1..=n] {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let prev = *p.last().unwrap();
                super::cg::selection_set(prev, lj).into_iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    paths.retain(|p| p[n] == lambdas[n + 1]);
    paths
}

/// u_ς ∈ M_{λ_N}⊗…⊗M_{λ_1}⊗M_{λ_0}: the image of e_0 under the nested embeddings.
pub fn conformal_block_vector(lambdas: &[u32], sigmas: &[u32]) -> Result<QGVector> {
    if !is_admissible(lambdas, sigmas) {
        return Err(Error::NotAdmissible(format!("lambdas {lambdas:?}, sigmas {sigmas:?}")));
    }
    let n = sigmas.len() - 1;
    let top = cg_embed(lambdas[n + 1], lambdas[n], sigmas[n - 1])?;
    let mut u = top.images[0].clone();
    for j in (1..n).rev() {
        let emb = cg_embed(sigmas[j], lambdas[j], sigmas[j - 1])?;
        let pos = u.shape().len() - 1;
        u = emb.apply_at(&u, pos);
    }
    Ok(u)
}
