use std::f64::consts::PI;

use super::config::CONFIG;
use super::Cplx;
use crate::{Error, Result};

// Lanczos coefficients for g = 7, n = 9.
const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma function. Reflection is used for Re z < 1/2.
pub fn gamma(z: Cplx) -> Result<Cplx> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - Cplx::new(nearest, 0.0)).norm() < CONFIG.gamma_pole_tol {
        return Err(Error::GammaPole(format!("{z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Cplx) -> Cplx {
    if z.re < 0.5 {
        let s = (Cplx::new(PI, 0.0) * z).sin();
        return Cplx::new(PI, 0.0) / (s * gamma_unchecked(Cplx::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Cplx::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// Real Gamma; convenience wrapper.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Cplx::new(x, 0.0)).map(|v| v.re)
}
