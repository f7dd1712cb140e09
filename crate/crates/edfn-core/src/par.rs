//! Data-parallel map helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these run on the rayon global pool;
//! without it they are plain sequential loops. Both preserve input order, so
//! results are byte-identical across the two builds and any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over a slice, in parallel when enabled.
#[cfg(feature = "parallel")]
pub fn map_slice<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, in parallel when enabled.
#[cfg(feature = "parallel")]
pub fn map_range<U: Send, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Whether this build runs the parallel code paths.
pub const fn is_parallel_build() -> bool {
    cfg!(feature = "parallel")
}
