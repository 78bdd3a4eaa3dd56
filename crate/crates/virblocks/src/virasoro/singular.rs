use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;

use crate::scalars::linalg::{rref, Matrix};
use crate::scalars::{factorial, int, RatFunc, Var};

use super::verma::{h_weight, ModuleLabel, Partition, Straightener, VermaVector};

/// Compositions of n in lexicographic order.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// (−4/κ)^{λ+1−k}(λ!)² / ∏_{u<k}(p_1+…+p_u)(p_{u+1}+…+p_k).
pub fn bsa_coefficient(lambda: u32, p: &[u32]) -> RatFunc {
    let k = p.len() as u32;
    let f = factorial(lambda as u64);
    let mut c = BigRational::from_integer(&f * &f);
    let total: u32 = p.iter().sum();
    let mut left = 0;
    for &pu in &p[..p.len() - 1] {
        left += pu;
        c /= int((left * (total - left)) as i64);
    }
    let base = RatFunc::var(Var::Kappa).inv().unwrap().scale(&int(-4));
    base.pow((lambda + 1 - k) as i64).scale(&c)
}

/// Σ_compositions coef·L_{−p_1}⋯L_{−p_k}v in Verma(h_λ), straightened.
pub fn singular_vector(lambda: u32) -> VermaVector {
    let module = ModuleLabel::Verma(h_weight(lambda));
    let mut s = Straightener::new(h_weight(lambda));
    let mut out = VermaVector::zero(module.clone());
    for p in compositions(lambda + 1) {
        let mut v = VermaVector::highest(module.clone());
        for &pj in p.iter().rev() {
            v = s.act(-(pj as i64), &v);
        }
        out = out.add(&v.scale(&bsa_coefficient(lambda, &p)));
    }
    out
}

/// Row-echelon basis of the degree-d slice of U(vir_{<0})·S_λv.
pub struct Echelon {
    pub columns: Vec<Partition>,
    pub rows: Vec<Vec<RatFunc>>,
    pub pivots: Vec<usize>,
}

type Cache = RwLock<HashMap<(u32, u32), Arc<Echelon>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

fn build_echelon(lambda: u32, d: u32) -> Echelon {
    let columns = Partition::all_of(d);
    let mut rows: Matrix = Vec::new();
    if d > lambda {
        let sv = singular_vector(lambda);
        let mut s = Straightener::new(h_weight(lambda));
        for pi in Partition::all_of(d - lambda - 1) {
            let mut v = sv.clone();
            for &p in pi.parts().iter().rev() {
                v = s.act(-(p as i64), &v);
            }
            rows.push(columns.iter().map(|c| v.coeff(c)).collect());
        }
    }
    let n = columns.len();
    let pivots = rref(&mut rows, n);
    rows.truncate(pivots.len());
    Echelon { columns, rows, pivots }
}

/// Cached echelon basis. Concurrent first calls may both compute; the result
/// is canonical, so whichever insert wins is identical.
pub fn echelon(lambda: u32, d: u32) -> Arc<Echelon> {
    if let Some(e) = cache().read().unwrap().get(&(lambda, d)) {
        return e.clone();
    }
    let e = Arc::new(build_echelon(lambda, d));
    cache().write().unwrap().entry((lambda, d)).or_insert(e).clone()
}

/// Canonical representative of v in Q_λ: pivot coordinates are eliminated.
pub fn quotient_reduce(v: &VermaVector) -> VermaVector {
    let ModuleLabel::FirstRow(lambda) = v.module else {
        return v.clone();
    };
    let mut degrees: Vec<u32> = v.entries.keys().map(|p| p.degree()).collect();
    degrees.dedup();
    let mut out = VermaVector::zero(v.module.clone());
    for d in degrees {
        let e = echelon(lambda, d);
        let mut x: Vec<RatFunc> = e.columns.iter().map(|c| v.coeff(c)).collect();
        for (row, &pc) in e.rows.iter().zip(&e.pivots) {
            if x[pc].is_zero() {
                continue;
            }
            let f = x[pc].clone();
            for (xi, ri) in x.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *xi = &*xi - &(&f * ri);
                }
            }
        }
        for (c, val) in e.columns.iter().zip(x) {
            out.add_term(c.clone(), val);
        }
    }
    out
}

/// dim of the degree-d piece of Q_λ.
pub fn quotient_dim(lambda: u32, d: u32) -> usize {
    let e = echelon(lambda, d);
    e.columns.len() - e.rows.len()
}
