//! Data-parallel driver for the independent inner loops of the crate.
//!
//! With the `parallel` feature (default) work items above `threshold` are
//! spread over the rayon pool; below it, and always without the feature, the
//! same closure runs sequentially. Results are in index order either way, so
//! output is identical across both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, threshold: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if n >= threshold {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, _threshold: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Work-size cutoff for series multiplication; rayon overhead dominates on
/// the short expansions the invariants need.
pub(crate) const SERIES_PAR_MIN: usize = 96;

/// Table validation runs one task per row.
pub(crate) const ROWS_PAR_MIN: usize = 64;
