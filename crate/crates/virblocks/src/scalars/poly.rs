use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat_to_string, Cplx};

/// Formal variable tag. Only used for printing and sanity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    Kappa,
    H,
    Mu,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Kappa => "kappa",
            Var::H => "h",
            Var::Mu => "mu",
        }
    }
}

/// Dense univariate polynomial over Q, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
    var: Var,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>, var: Var) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        Poly { coeffs: Vec::new(), var }
    }

    pub fn one(var: Var) -> Self {
        Poly::constant(BigRational::one(), var)
    }

    pub fn constant(c: BigRational, var: Var) -> Self {
        Poly::new(vec![c], var)
    }

    /// c·tⁿ
    pub fn monomial(c: BigRational, n: usize, var: Var) -> Self {
        if c.is_zero() {
            return Poly::zero(var);
        }
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs, var }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Multiplicity of t as a factor (0 for the zero polynomial).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// True when the polynomial is c·tⁿ.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect(), var: self.var }
    }

    /// Multiply by tⁿ.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs, var: self.var }
    }

    /// Divide by tⁿ; the caller guarantees exactness.
    pub fn unshift(&self, n: usize) -> Poly {
        debug_assert!(self.low_order() >= n || self.is_zero());
        Poly { coeffs: self.coeffs.iter().skip(n).cloned().collect(), var: self.var }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.recip())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn join_var(&self, other: &Poly) -> Var {
        if self.degree() <= 0 {
            other.var
        } else {
            debug_assert!(other.degree() <= 0 || other.var == self.var, "mixed variables");
            self.var
        }
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let var = self.join_var(d);
        if self.degree() < d.degree() {
            return (Poly::zero(var), Poly { coeffs: self.coeffs.clone(), var });
        }
        let dl = d.lead().recip();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q, var), Poly::new(r, var))
    }

    /// Exact division; debug-checks the remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        if d.degree() == 0 {
            return self.scale(&d.coeffs[0].recip());
        }
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd by the Euclidean algorithm over Q.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let var = a.join_var(b);
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == 0 || b.degree() == 0 {
            return Poly::one(var);
        }
        if a.is_monomial() || b.is_monomial() {
            let n = a.low_order().min(b.low_order());
            return Poly::monomial(BigRational::one(), n, var);
        }
        let (mut x, mut y) = if a.degree() >= b.degree() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
        // strip the common power of t first; it is cheap and common
        let n = x.low_order().min(y.low_order());
        x = x.unshift(x.low_order());
        y = y.unshift(y.low_order());
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.degree() == 0 {
                return Poly::monomial(BigRational::one(), n, var);
            }
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic().shift(n)
    }

    pub fn eval_rat(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_cplx(&self, t: Cplx) -> Cplx {
        let mut acc = Cplx::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + super::rat_to_f64(c);
        }
        acc
    }

    /// Σ |c_i| |t|^i, the scale used for pole detection.
    pub fn abs_scale(&self, t: f64) -> f64 {
        let t = t.abs();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + super::rat_to_f64(&c.abs());
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect();
        Poly::new(coeffs, self.var)
    }

    /// Substitute t ↦ a·t + b.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()], self.var);
        let mut acc = Poly::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone(), self.var);
        }
        acc
    }
}

impl fmt::Display for Poly {
    /// Canonical ascending-degree form: "c0 + c1*t + c2*t^2", zero terms skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = rat_to_string(c);
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*{}", self.var.symbol())?,
                _ => write!(f, "{cs}*{}^{i}", self.var.symbol())?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Inverse of the `Display` form.
    pub fn parse(s: &str, var: Var) -> Option<Poly> {
        let s = s.trim();
        if s == "0" {
            return Some(Poly::zero(var));
        }
        let sym = var.symbol();
        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in s.split(" + ") {
            let (c, deg) = match term.split_once('*') {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let deg = if rest == sym {
                        1
                    } else {
                        rest.strip_prefix(sym)?.strip_prefix('^')?.parse().ok()?
                    };
                    (c, deg)
                }
            };
            let c = super::parse_rat(c)?;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigRational::zero());
            }
            coeffs[deg] += c;
        }
        Some(Poly::new(coeffs, var))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let var = self.join_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out, var)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect(), var: self.var }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let var = self.join_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(var);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out, var)
    }
}
