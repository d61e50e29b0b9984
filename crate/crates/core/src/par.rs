//! Data-parallel scan helpers. Verification suites iterate over independent
//! basis tuples; with the `parallel` feature the scans fan out over rayon,
//! otherwise they run sequentially. Both paths return the first witness in
//! index order, so results are deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Scan `0..n`, returning the lowest-index witness produced by `f`.
#[cfg(feature = "parallel")]
pub fn find_witness<W, F>(n: usize, f: F) -> Option<W>
where
    W: Send,
    F: Fn(usize) -> Option<W> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(|i| f(i))
}

#[cfg(not(feature = "parallel"))]
pub fn find_witness<W, F>(n: usize, f: F) -> Option<W>
where
    W: Send,
    F: Fn(usize) -> Option<W> + Sync + Send,
{
    (0..n).find_map(f)
}

/// Map `0..n` preserving order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
