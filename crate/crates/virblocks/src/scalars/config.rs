//! Numeric tolerances and defaults shared across modules.

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Relative size of a denominator below which evaluation reports a pole.
    pub pole_tol: f64,
    /// Distance to a nonpositive integer treated as a Gamma pole.
    pub gamma_pole_tol: f64,
    pub kappa0: f64,
    pub assoc_tol: f64,
    pub assoc_trunc: usize,
}

pub const DEFAULT_KAPPA: f64 = 2.6457513110645906;
pub const KAPPA_ENV: &str = "VIRBLOCKS_KAPPA";

pub const CONFIG: Config = Config {
    pole_tol: 1e-12,
    gamma_pole_tol: 1e-10,
    kappa0: DEFAULT_KAPPA,
    assoc_tol: 1e-8,
    assoc_trunc: 24,
};

/// Default κ₀, honouring the environment override when it parses.
pub fn default_kappa() -> f64 {
    std::env::var(KAPPA_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|k| k.is_finite() && *k > 0.0)
        .unwrap_or(CONFIG.kappa0)
}
