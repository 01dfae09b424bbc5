//! Execution strategy for the embarrassingly parallel inner loops.
//!
//! Every call site hands over an index range and a pure function; with the
//! `parallel` feature the range is mapped on the rayon pool, without it the
//! same closure runs sequentially. Results come back in index order either
//! way, so downstream reductions are deterministic.

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.map(f).collect()
}
