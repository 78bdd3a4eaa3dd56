//! Exact quantum-group and Virasoro computations for conformal blocks.
//!
//! The crate has two exact towers, `Q(q)` for `U_q(sl2)` data and `Q(κ)` for
//! Virasoro data, and a thin complex-double layer used only for evaluation.

pub mod assoc;
pub mod cli;
pub mod error;
pub mod par;
pub mod qgroup;
pub mod scalars;
pub mod series;
pub mod virasoro;

pub use error::{Error, Result};
