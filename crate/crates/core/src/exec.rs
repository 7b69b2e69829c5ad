//! Execution mode for the data-parallel kernels.
//!
//! The expensive inner loops (reference-lift computation, per-class Karoubi
//! work, verification fan-out) operate on independent items and aggregate in
//! index order, so both modes produce bit-identical results. Without the
//! `parallel` feature only [`ExecMode::Sequential`] exists and rayon is not
//! compiled in.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Maps `f` over `0..len`, preserving index order in the output.
pub(crate) fn map_indexed<T, F>(mode: ExecMode, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..len).map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..len).into_par_iter().map(f).collect(),
    }
}
