//! Data-parallel helpers. With the `parallel` feature the maps run on rayon;
//! without it they run sequentially. `Mode` lets callers (and the benches)
//! pick either path at run time when both are compiled in.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

static FORCE_SEQ: AtomicBool = AtomicBool::new(false);

/// Process-wide switch; mostly for benchmarks.
pub fn set_mode(mode: Mode) {
    FORCE_SEQ.store(mode == Mode::Sequential, Ordering::SeqCst);
}

pub fn mode() -> Mode {
    if cfg!(feature = "parallel") && !FORCE_SEQ.load(Ordering::SeqCst) {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}
