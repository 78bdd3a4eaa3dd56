use std::collections::BTreeMap;

use crate::scalars::{q_integer, RatFunc, Var};

/// Generators of U_q(sl2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E,
    F,
    K,
    Kinv,
}

/// Vector in M_{λ_N} ⊗ … ⊗ M_{λ_1}. `shape` and multi-indices are stored in
/// display order, leftmost factor first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGVector {
    shape: Vec<u32>,
    entries: BTreeMap<Vec<u32>, RatFunc>,
}

impl QGVector {
    pub fn zero(shape: &[u32]) -> Self {
        assert!(!shape.is_empty(), "empty tensor shape");
        QGVector { shape: shape.to_vec(), entries: BTreeMap::new() }
    }

    pub fn basis(shape: &[u32], index: &[u32]) -> Self {
        let mut v = Self::zero(shape);
        v.add_term(index.to_vec(), RatFunc::one(Var::Q));
        v
    }

    pub fn shape(&self) -> &[u32] {
        &self.shape
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u32>, RatFunc> {
        &self.entries
    }

    pub fn get(&self, index: &[u32]) -> RatFunc {
        self.entries.get(index).cloned().unwrap_or_else(|| RatFunc::zero(Var::Q))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.shape.iter().map(|&l| l as usize + 1).product()
    }

    /// Adds c at `index`, dropping the entry if it cancels.
    pub fn add_term(&mut self, index: Vec<u32>, c: RatFunc) {
        debug_assert!(index.len() == self.shape.len() && index.iter().zip(&self.shape).all(|(j, l)| j <= l));
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.entries.remove(&index);
                }
            }
            None => {
                self.entries.insert(index, c);
            }
        }
    }

    pub fn add(&self, other: &QGVector) -> QGVector {
        assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &QGVector) -> QGVector {
        self.add(&other.scale(&RatFunc::from_int(-1, Var::Q)))
    }

    pub fn scale(&self, c: &RatFunc) -> QGVector {
        if c.is_zero() {
            return QGVector::zero(&self.shape);
        }
        QGVector {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Weight λ−2j summed over factors, for a basis index.
    pub fn weight_of(shape: &[u32], index: &[u32]) -> i64 {
        shape.iter().zip(index).map(|(&l, &j)| l as i64 - 2 * j as i64).sum()
    }

    /// All multi-indices of a shape in lexicographic order.
    pub fn all_indices(shape: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &l in shape {
            out = out.into_iter().flat_map(|p| (0..=l).map(move |j| {
                let mut q = p.clone();
                q.push(j);
                q
            })).collect();
        }
        out
    }

    /// Multi-indices of total weight w.
    pub fn weight_indices(shape: &[u32], w: i64) -> Vec<Vec<u32>> {
        Self::all_indices(shape).into_iter().filter(|i| Self::weight_of(shape, i) == w).collect()
    }
}

fn q_pow(n: i64) -> RatFunc {
    RatFunc::t_pow(n, Var::Q)
}

/// Action of a generator through the iterated coproduct
/// Δ(E) = E⊗K + 1⊗E, Δ(F) = F⊗1 + K⁻¹⊗F, Δ(K) = K⊗K.
/// E on a factor picks up K from every factor to its right, F picks up K⁻¹
/// from every factor to its left.
pub fn act_generator(g: Gen, v: &QGVector) -> QGVector {
    let shape = v.shape().to_vec();
    let mut out = QGVector::zero(&shape);
    for (idx, c) in v.entries() {
        match g {
            Gen::K | Gen::Kinv => {
                let w = QGVector::weight_of(&shape, idx);
                let w = if g == Gen::K { w } else { -w };
                out.add_term(idx.clone(), c * &q_pow(w));
            }
            Gen::E => {
                for p in 0..shape.len() {
                    let j = idx[p] as i64;
                    if j == 0 {
                        continue;
                    }
                    let l = shape[p] as i64;
                    let right: i64 = (p + 1..shape.len()).map(|r| shape[r] as i64 - 2 * idx[r] as i64).sum();
                    let coef = &(&q_integer(j) * &q_integer(l + 1 - j)) * &q_pow(right);
                    let mut ni = idx.clone();
                    ni[p] -= 1;
                    out.add_term(ni, c * &coef);
                }
            }
            Gen::F => {
                for p in 0..shape.len() {
                    if idx[p] == shape[p] {
                        continue;
                    }
                    let left: i64 = (0..p).map(|r| shape[r] as i64 - 2 * idx[r] as i64).sum();
                    let mut ni = idx.clone();
                    ni[p] += 1;
                    out.add_term(ni, c * &q_pow(-left));
                }
            }
        }
    }
    out
}
