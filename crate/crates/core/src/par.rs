//! Data-parallel fan-out helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these dispatch through rayon;
//! without it they run plain iterators. Callers must keep candidate
//! evaluation pure and re-sort results, so output is schedule-independent.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over candidates, keeping the results in input order.
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Filter-map over candidates, keeping the results in input order.
pub fn par_filter_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().filter_map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().filter_map(f).collect()
    }
}

/// Fan out over an index range.
pub fn par_range_filter_map<U, F>(n: u128, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u128) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n as u64).into_par_iter().filter_map(|i| f(i as u128)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).filter_map(f).collect()
    }
}

/// Run a closure on a single-threaded pool (used by benches to compare the
/// parallel kernels against a sequential schedule at runtime).
#[cfg(feature = "parallel")]
pub fn run_single_threaded<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn run_single_threaded<R>(f: impl FnOnce() -> R) -> R {
    f()
}
