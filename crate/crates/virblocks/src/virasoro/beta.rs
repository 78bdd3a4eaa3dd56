use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::qgroup::in_selection;
use crate::scalars::{factorial, gamma, int, rat_to_f64, rat_to_string, Cplx};
use crate::{Error, Result};

/// Gamma argument a + b·(1/κ).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaArg {
    pub a: BigRational,
    pub b: BigRational,
}

impl GammaArg {
    fn new(a: BigRational, b: BigRational) -> Self {
        GammaArg { a, b }
    }

    pub fn eval(&self, kappa0: f64) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) / kappa0
    }

    pub fn render(&self) -> String {
        if self.b.is_zero() {
            return rat_to_string(&self.a);
        }
        format!("{} + {}/kappa", rat_to_string(&self.a), rat_to_string(&self.b))
    }
}

/// (1/ℓ!)·∏Γ(num)/∏Γ(den), with identical factors cancelled.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaCoef {
    pub labels: (u32, u32, u32),
    pub ell: u32,
    pub num: Vec<GammaArg>,
    pub den: Vec<GammaArg>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaProductJson {
    pub labels: [u32; 3],
    pub inv_factorial: u32,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// β(a, b; τ) = (1/ℓ!)∏_{p=1}^{ℓ} Γ(1+4p/κ)Γ(1−(4/κ)(1+a−p))Γ(1−(4/κ)(1+b−p))
///   / (Γ(1+4/κ)Γ(2−(2/κ)(4−2p+a+b+τ))),   ℓ = (a+b−τ)/2.
pub fn beta_coef(l_mid: u32, l_in: u32, l_out: u32) -> Result<BetaCoef> {
    if !in_selection(l_out, l_mid, l_in) {
        return Err(Error::SelectionRuleViolation(format!("{l_out} not in E({l_mid},{l_in})")));
    }
    let ell = (l_mid + l_in - l_out) / 2;
    let (a, b, t) = (l_mid as i64, l_in as i64, l_out as i64);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for p in 1..=ell as i64 {
        num.push(GammaArg::new(int(1), int(4 * p)));
        num.push(GammaArg::new(int(1), int(-4 * (1 + a - p))));
        num.push(GammaArg::new(int(1), int(-4 * (1 + b - p))));
        den.push(GammaArg::new(int(1), int(4)));
        den.push(GammaArg::new(int(2), int(-2 * (4 - 2 * p + a + b + t))));
    }
    // cancel common factors
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|d| *d == num[i]) {
            den.remove(j);
            num.remove(i);
        } else {
            i += 1;
        }
    }
    num.sort();
    den.sort();
    Ok(BetaCoef { labels: (l_mid, l_in, l_out), ell, num, den })
}

impl BetaCoef {
    pub fn eval(&self, kappa0: f64) -> Result<f64> {
        let mut v = Cplx::new(1.0, 0.0);
        for g in &self.num {
            v *= gamma(Cplx::new(g.eval(kappa0), 0.0))?;
        }
        for g in &self.den {
            v /= gamma(Cplx::new(g.eval(kappa0), 0.0))?;
        }
        let f = factorial(self.ell as u64);
        Ok(v.re / rat_to_f64(&BigRational::from_integer(f)))
    }

    pub fn to_json(&self) -> GammaProductJson {
        GammaProductJson {
            labels: [self.labels.0, self.labels.1, self.labels.2],
            inv_factorial: self.ell,
            num: self.num.iter().map(|g| g.render()).collect(),
            den: self.den.iter().map(|g| g.render()).collect(),
        }
    }
}
