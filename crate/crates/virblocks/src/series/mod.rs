//! Truncated Frobenius series and the differential operators acting on them.

pub mod blocks;
pub mod coef;
pub mod operator;
pub mod ops;
#[allow(clippy::module_inception)]
pub mod series;

pub use blocks::{
    bsa_infinity_check, compose_blocks, compose_blocks_at, compose_blocks_f64, compose_blocks_in, frobenius_solve, solve_in, Specializer,
};
pub use coef::{Coef, KappaMode};
pub use operator::{apply_operator, apply_operator_to, SeriesOperator};
pub use ops::{bsa_from, bsa_hatted, bsa_infinity, bsa_reduced, bsa_reduced_with, witt_hatted, witt_infinity, witt_reduced};
pub use series::{eval_series, FrobeniusSeries, Series, SeriesValue, EXACT};
