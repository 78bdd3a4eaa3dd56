use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::scalars::{int, rat, RatFunc, Var};

/// PBW word L_{−n_k}⋯L_{−n_1}v, parts stored largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts into PBW order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Outermost generator and the remaining word.
    pub fn split_first(&self) -> Option<(u32, Partition)> {
        self.0.split_first().map(|(a, rest)| (*a, Partition(rest.to_vec())))
    }

    /// All partitions of d, in `Ord` order.
    pub fn all_of(d: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Partition {
    /// Degree first, then lexicographic on the parts.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// c(κ) = 13 − 6(κ/4 + 4/κ).
pub fn central_charge() -> RatFunc {
    let k = RatFunc::var(Var::Kappa);
    let t = &k.scale(&rat(1, 4)) + &k.inv().unwrap().scale(&int(4));
    &RatFunc::from_int(13, Var::Kappa) - &t.scale(&int(6))
}

/// h_λ = λ(2(λ+2) − κ)/(2κ).
pub fn h_weight(lambda: u32) -> RatFunc {
    let l = lambda as i64;
    let k = RatFunc::var(Var::Kappa);
    let num = &RatFunc::from_int(2 * l * (l + 2), Var::Kappa) - &k.scale(&int(l));
    &num * &k.inv().unwrap().scale(&rat(1, 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleLabel {
    Verma(RatFunc),
    FirstRow(u32),
}

impl ModuleLabel {
    pub fn h(&self) -> RatFunc {
        match self {
            ModuleLabel::Verma(h) => h.clone(),
            ModuleLabel::FirstRow(l) => h_weight(*l),
        }
    }
}

/// Sparse vector in a Verma module (or a first-row quotient) over Q(κ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaVector {
    pub module: ModuleLabel,
    pub entries: BTreeMap<Partition, RatFunc>,
}

impl VermaVector {
    pub fn zero(module: ModuleLabel) -> Self {
        VermaVector { module, entries: BTreeMap::new() }
    }

    pub fn highest(module: ModuleLabel) -> Self {
        Self::basis(module, Partition::empty())
    }

    pub fn basis(module: ModuleLabel, p: Partition) -> Self {
        let mut v = Self::zero(module);
        v.add_term(p, RatFunc::one(Var::Kappa));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> RatFunc {
        self.entries.get(p).cloned().unwrap_or_else(|| RatFunc::zero(Var::Kappa))
    }

    pub fn add_term(&mut self, p: Partition, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        if let Some(e) = self.entries.get_mut(&p) {
            *e = &*e + &c;
            if e.is_zero() {
                self.entries.remove(&p);
            }
        } else {
            self.entries.insert(p, c);
        }
    }

    pub fn add(&self, other: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        for (p, c) in &other.entries {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> VermaVector {
        let mut out = VermaVector::zero(self.module.clone());
        for (p, v) in &self.entries {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    /// Component of degree d.
    pub fn degree_part(&self, d: u32) -> VermaVector {
        VermaVector {
            module: self.module.clone(),
            entries: self.entries.iter().filter(|(p, _)| p.degree() == d).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }
}

type Terms = Vec<(Partition, RatFunc)>;

/// PBW straightening for a fixed highest weight h and central charge c, with
/// a memo of L_n applied to basis words.
pub struct Straightener {
    h: RatFunc,
    c: RatFunc,
    memo: HashMap<(i64, Partition), Terms>,
}

impl Straightener {
    pub fn new(h: RatFunc) -> Self {
        Straightener { h, c: central_charge(), memo: HashMap::new() }
    }

    pub fn h(&self) -> &RatFunc {
        &self.h
    }

    /// L_n applied to a single PBW word.
    pub fn act_word(&mut self, n: i64, w: &Partition) -> Terms {
        if let Some(t) = self.memo.get(&(n, w.clone())) {
            return t.clone();
        }
        let out = self.compute(n, w);
        self.memo.insert((n, w.clone()), out.clone());
        out
    }

    fn compute(&mut self, n: i64, w: &Partition) -> Terms {
        let one = || RatFunc::one(Var::Kappa);
        if n == 0 {
            let c = &self.h + &RatFunc::from_int(w.degree() as i64, Var::Kappa);
            return if c.is_zero() { Vec::new() } else { vec![(w.clone(), c)] };
        }
        let Some((a, rest)) = w.split_first() else {
            return if n > 0 { Vec::new() } else { vec![(Partition(vec![(-n) as u32]), one())] };
        };
        let a = a as i64;
        let mut acc: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        let push = |acc: &mut BTreeMap<Partition, RatFunc>, p: Partition, c: RatFunc| {
            if c.is_zero() {
                return;
            }
            let e = acc.entry(p).or_insert_with(|| RatFunc::zero(Var::Kappa));
            *e = &*e + &c;
        };
        if n < 0 {
            let m = -n;
            if m >= a {
                let mut parts = vec![m as u32];
                parts.extend(w.parts());
                return vec![(Partition(parts), one())];
            }
            // L_{−m}L_{−a}X = L_{−a}(L_{−m}X) + (a−m)L_{−(m+a)}X
            for (p, c) in self.act_word(n, &rest) {
                for (p2, c2) in self.act_word(-a, &p) {
                    push(&mut acc, p2, &c * &c2);
                }
            }
            for (p, c) in self.act_word(-(m + a), &rest) {
                push(&mut acc, p, c.scale(&int(a - m)));
            }
        } else {
            // L_nL_{−a}X = L_{−a}(L_nX) + (n+a)L_{n−a}X + δ_{n,a}(n³−n)/12·c·X
            for (p, c) in self.act_word(n, &rest) {
                for (p2, c2) in self.act_word(-a, &p) {
                    push(&mut acc, p2, &c * &c2);
                }
            }
            for (p, c) in self.act_word(n - a, &rest) {
                push(&mut acc, p, c.scale(&int(n + a)));
            }
            if n == a {
                let z = self.c.scale(&rat(n * n * n - n, 12));
                push(&mut acc, rest.clone(), z);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn act(&mut self, n: i64, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero(v.module.clone());
        for (p, c) in &v.entries {
            for (p2, c2) in self.act_word(n, p) {
                out.add_term(p2, c * &c2);
            }
        }
        out
    }
}

/// L_n·v in PBW-straightened form.
pub fn act_l(n: i64, v: &VermaVector) -> VermaVector {
    Straightener::new(v.module.h()).act(n, v)
}

/// ⟨L_{−π}v', X⟩ = ⟨v', L_{n_1}⋯L_{n_k}X⟩ for π = (n_k ≥ … ≥ n_1).
pub fn hw_pairing(wprime: &Partition, x: &VermaVector) -> RatFunc {
    let mut s = Straightener::new(x.module.h());
    let mut v = x.clone();
    for &p in wprime.parts() {
        v = s.act(p as i64, &v);
    }
    v.coeff(&Partition::empty())
}
