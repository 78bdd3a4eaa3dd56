//! Reduction of descendant matrix elements to differential operators acting
//! on the highest-weight matrix element.
//!
//! A state is ⟨b', Y(w_N, x_N)⋯Y(w_1, x_1) w_0⟩ with PBW words in every slot.
//! Each rewrite removes one generator from the bra, the ket or a slot, so the
//! total PBW length strictly drops and the recursion terminates. The point
//! geometry (plain chain, or the nested pair x_2 = x_1 + y) only decides how
//! powers, differences and derivatives become series operators.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::scalars::{binom, RatFunc, Var};
use crate::series::ops::difference_power;
use crate::series::SeriesOperator;
use crate::{Error, Result};

use super::verma::{Partition, Straightener, VermaVector};

type Op = SeriesOperator;

fn cst(r: BigRational) -> RatFunc {
    RatFunc::constant(r, Var::Kappa)
}

/// How insertion points are expressed in the series variables. Slots are
/// 0-based: slot s sits at x_{s+1}.
pub trait Geometry {
    fn npoints(&self) -> usize;
    fn nvars(&self) -> usize;
    /// x_s^e
    fn pos_pow(&self, s: usize, e: i64) -> Op;
    /// (−x_s)^e
    fn neg_pos_pow(&self, s: usize, e: i64) -> Op;
    /// (x_j − x_i)^e
    fn diff_pow(&self, j: usize, i: usize, e: i64) -> Op;
    /// ∂/∂x_s
    fn deriv(&self, s: usize) -> Op;
}

/// Points 0 < x_1 < … < x_N, one series variable each.
#[derive(Clone, Copy, Debug)]
pub struct Chain(pub usize);

impl Geometry for Chain {
    fn npoints(&self) -> usize {
        self.0
    }
    fn nvars(&self) -> usize {
        self.0
    }
    fn pos_pow(&self, s: usize, e: i64) -> Op {
        Op::signed_power(self.0, s, 1, e, RatFunc::one(Var::Kappa))
    }
    fn neg_pos_pow(&self, s: usize, e: i64) -> Op {
        Op::signed_power(self.0, s, -1, e, RatFunc::one(Var::Kappa))
    }
    fn diff_pow(&self, j: usize, i: usize, e: i64) -> Op {
        difference_power(j, i, e)
    }
    fn deriv(&self, s: usize) -> Op {
        Op::Deriv(s)
    }
}

/// Two points x_1 = x and x_2 = x + y with 0 < y < x, in the variables (y, x).
#[derive(Clone, Copy, Debug)]
pub struct Nested;

impl Geometry for Nested {
    fn npoints(&self) -> usize {
        2
    }
    fn nvars(&self) -> usize {
        2
    }
    fn pos_pow(&self, s: usize, e: i64) -> Op {
        match s {
            0 => Op::signed_power(2, 1, 1, e, RatFunc::one(Var::Kappa)),
            _ => Op::Binomial { lead: 1, lead_sign: 1, sub: 0, sub_sign: 1, exp: e },
        }
    }
    fn neg_pos_pow(&self, s: usize, e: i64) -> Op {
        match s {
            0 => Op::signed_power(2, 1, -1, e, RatFunc::one(Var::Kappa)),
            _ => Op::Binomial { lead: 1, lead_sign: -1, sub: 0, sub_sign: -1, exp: e },
        }
    }
    fn diff_pow(&self, j: usize, _i: usize, e: i64) -> Op {
        // x_2 − x_1 = y
        let sign = if j == 1 { 1 } else { -1 };
        Op::signed_power(2, 0, sign, e, RatFunc::one(Var::Kappa))
    }
    fn deriv(&self, s: usize) -> Op {
        match s {
            // ∂/∂x_1 at fixed x_2 is ∂_x − ∂_y
            0 => Op::sum(vec![Op::Deriv(1), Op::scalar(RatFunc::from_int(-1, Var::Kappa), 2).then(Op::Deriv(0))]),
            _ => Op::Deriv(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    bra: Partition,
    slots: Vec<Partition>,
    ket: Partition,
}

/// Memoized reduction for fixed weights and geometry.
pub struct Reducer<G: Geometry> {
    geom: G,
    bra: Straightener,
    ket: Straightener,
    slots: Vec<Straightener>,
    memo: HashMap<State, Op>,
}

impl<G: Geometry> Reducer<G> {
    /// `weights` = (h_0, h_1, …, h_N, h_∞).
    pub fn new(geom: G, weights: &[RatFunc]) -> Result<Self> {
        let n = geom.npoints();
        if n == 0 || weights.len() != n + 2 {
            return Err(Error::DomainViolation(format!("expected {} weights for {} points", n + 2, n)));
        }
        Ok(Reducer {
            bra: Straightener::new(weights[n + 1].clone()),
            ket: Straightener::new(weights[0].clone()),
            slots: weights[1..=n].iter().map(|h| Straightener::new(h.clone())).collect(),
            memo: HashMap::new(),
            geom,
        })
    }

    fn nv(&self) -> usize {
        self.geom.nvars()
    }

    /// c · geometric factor ∘ sub
    fn term(&self, c: RatFunc, factor: Op, sub: Op) -> Op {
        factor.scaled(&c, self.nv()).then(sub)
    }

    pub fn reduce(&mut self, bra: &Partition, slots: &[Partition], ket: &Partition) -> Result<Op> {
        if slots.len() != self.geom.npoints() {
            return Err(Error::DomainViolation(format!("expected {} slot words", self.geom.npoints())));
        }
        Ok(self.reduce_state(&State { bra: bra.clone(), slots: slots.to_vec(), ket: ket.clone() }))
    }

    /// Multilinear extension to vectors in each slot.
    pub fn reduce_vectors(&mut self, bra: &VermaVector, slots: &[VermaVector], ket: &VermaVector) -> Result<Op> {
        let mut combos: Vec<(Vec<Partition>, RatFunc)> = vec![(Vec::new(), RatFunc::one(Var::Kappa))];
        for v in slots {
            let mut next = Vec::new();
            for (ps, c) in &combos {
                for (p, c2) in &v.entries {
                    let mut ps = ps.clone();
                    ps.push(p.clone());
                    next.push((ps, c * c2));
                }
            }
            combos = next;
        }
        let mut terms = Vec::new();
        for (b, cb) in &bra.entries {
            for (k, ck) in &ket.entries {
                for (ps, c) in &combos {
                    let op = self.reduce(b, ps, k)?;
                    terms.push(op.scaled(&(&(cb * ck) * c), self.nv()));
                }
            }
        }
        Ok(Op::sum(terms))
    }

    fn reduce_state(&mut self, st: &State) -> Op {
        if let Some(op) = self.memo.get(st) {
            return op.clone();
        }
        let op = if let Some((n, rest)) = st.bra.split_first() {
            self.bra_rule(n as i64, rest, st)
        } else if let Some((n, rest)) = st.ket.split_first() {
            self.ket_rule(n as i64, rest, st)
        } else if let Some(i) = st.slots.iter().position(|w| !w.is_empty()) {
            self.slot_rule(i, st)
        } else {
            Op::Identity
        };
        self.memo.insert(st.clone(), op.clone());
        op
    }

    fn with_slot(slots: &[Partition], j: usize, p: Partition) -> Vec<Partition> {
        let mut s = slots.to_vec();
        s[j] = p;
        s
    }

    /// [L_m, Y(w, x_j)] = Σ_l C(m+1, l) x_j^{m+1−l} Y(L_{l−1}w, x_j), with the
    /// sum running while L_{l−1}w can be nonzero. Terms are scaled by `sign`.
    fn commutator_terms(&mut self, m: i64, sign: i64, bra: &Partition, slots: &[Partition], ket: &Partition, out: &mut Vec<Op>) {
        let sub_state = |slots: Vec<Partition>| State { bra: bra.clone(), slots, ket: ket.clone() };
        for j in 0..slots.len() {
            let top = if m + 1 >= 0 { m + 1 } else { slots[j].degree() as i64 + 1 };
            for l in 0..=top {
                let b = cst(binom(m + 1, l) * crate::scalars::int(sign));
                if l == 0 {
                    let sub = self.reduce_state(&sub_state(slots.to_vec()));
                    let f = self.geom.pos_pow(j, m + 1).then(self.geom.deriv(j));
                    out.push(self.term(b, f, sub));
                    continue;
                }
                for (p, c) in self.slots[j].act_word(l - 1, &slots[j]) {
                    let sub = self.reduce_state(&sub_state(Self::with_slot(slots, j, p)));
                    out.push(self.term(&b * &c, self.geom.pos_pow(j, m + 1 - l), sub));
                }
            }
        }
    }

    /// b' = L'_{−n}b'': move L_n to the right.
    fn bra_rule(&mut self, n: i64, rest: Partition, st: &State) -> Op {
        let mut out = Vec::new();
        for (p, c) in self.ket.act_word(n, &st.ket) {
            let sub = self.reduce_state(&State { bra: rest.clone(), slots: st.slots.clone(), ket: p });
            out.push(sub.scaled(&c, self.nv()));
        }
        self.commutator_terms(n, 1, &rest, &st.slots, &st.ket, &mut out);
        Op::sum(out)
    }

    /// w_0 = L_{−n}w_0': move L_{−n} to the left, where it acts on the bra as L'_n.
    fn ket_rule(&mut self, n: i64, rest: Partition, st: &State) -> Op {
        let mut out = Vec::new();
        for (p, c) in self.bra.act_word(n, &st.bra) {
            let sub = self.reduce_state(&State { bra: p, slots: st.slots.clone(), ket: rest.clone() });
            out.push(sub.scaled(&c, self.nv()));
        }
        self.commutator_terms(-n, -1, &st.bra, &st.slots, &rest, &mut out);
        Op::sum(out)
    }

    /// w_i = L_{−n}w: expand the mode around x_i and collect the contributions
    /// of the bra, the other insertions and the ket.
    fn slot_rule(&mut self, i: usize, st: &State) -> Op {
        let (n, w) = st.slots[i].split_first().expect("slot is nonempty");
        let n = n as i64;
        let s1 = Self::with_slot(&st.slots, i, w);
        let one = || RatFunc::one(Var::Kappa);
        let mut out = Vec::new();
        // at infinity
        let mut k = 0;
        while n + k <= st.bra.degree() as i64 {
            let b = cst(binom(1 - n, k));
            for (p, c) in self.bra.act_word(n + k, &st.bra) {
                let sub = self.reduce_state(&State { bra: p, slots: s1.clone(), ket: st.ket.clone() });
                out.push(self.term(&b * &c, self.geom.neg_pos_pow(i, k), sub));
            }
            k += 1;
        }
        // at the other insertions
        for j in 0..s1.len() {
            if j == i {
                continue;
            }
            for l in 0..=(s1[j].degree() as i64 + 1) {
                let b = cst(-binom(1 - n, l));
                if l == 0 {
                    let sub = self.reduce_state(&State { bra: st.bra.clone(), slots: s1.clone(), ket: st.ket.clone() });
                    let f = self.geom.diff_pow(j, i, 1 - n).then(self.geom.deriv(j));
                    out.push(self.term(b, f, sub));
                    continue;
                }
                for (p, c) in self.slots[j].act_word(l - 1, &s1[j]) {
                    let sub = self.reduce_state(&State { bra: st.bra.clone(), slots: Self::with_slot(&s1, j, p), ket: st.ket.clone() });
                    out.push(self.term(&b * &c, self.geom.diff_pow(j, i, 1 - n - l), sub));
                }
            }
        }
        // at the origin, L_{k−1} on the ket for k ≥ 1
        for k in 1..=(st.ket.degree() as i64 + 1) {
            let b = cst(-binom(1 - n, k));
            for (p, c) in self.ket.act_word(k - 1, &st.ket) {
                let sub = self.reduce_state(&State { bra: st.bra.clone(), slots: s1.clone(), ket: p });
                out.push(self.term(&b * &c, self.geom.neg_pos_pow(i, 1 - n - k), sub));
            }
        }
        // L_{−1} on the ket: translation, Σ_j ∂_j minus L'_1 on the bra
        let here = self.reduce_state(&State { bra: st.bra.clone(), slots: s1.clone(), ket: st.ket.clone() });
        let grad = Op::sum((0..s1.len()).map(|j| self.geom.deriv(j)).collect());
        out.push(self.term(one(), self.geom.neg_pos_pow(i, 1 - n), grad.then(here)));
        for (p, c) in self.bra.act_word(1, &st.bra) {
            let sub = self.reduce_state(&State { bra: p, slots: s1.clone(), ket: st.ket.clone() });
            out.push(self.term(-&c, self.geom.neg_pos_pow(i, 1 - n), sub));
        }
        Op::sum(out)
    }
}

/// ⟨b', Y(w_N, x_N)⋯Y(w_1, x_1) w_0⟩ as an operator on the highest-weight
/// matrix element, for 0 < x_1 < … < x_N. `slots[s]` is the word at x_{s+1};
/// `weights` = (h_0, …, h_N, h_∞).
pub fn matrix_element_reduce(bra: &Partition, slots: &[Partition], ket: &Partition, weights: &[RatFunc]) -> Result<Op> {
    Reducer::new(Chain(slots.len()), weights)?.reduce(bra, slots, ket)
}

/// ⟨b', Y(Y(w_2, y)w_1, x) w_0⟩ as an operator in (y, x) on the nested
/// highest-weight matrix element; `weights` = (h_0, h_1, h_2, h_∞).
pub fn nested_reduce(bra: &Partition, w2: &Partition, w1: &Partition, ket: &Partition, weights: &[RatFunc]) -> Result<Op> {
    Reducer::new(Nested, weights)?.reduce(bra, &[w1.clone(), w2.clone()], ket)
}
