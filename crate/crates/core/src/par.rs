//! Execution backend for the enumeration kernels.
//!
//! With the `parallel` feature (default) the data-parallel loops run on the
//! rayon pool. Without it, [`Execution::Parallel`] silently runs sequentially,
//! so callers never need their own `cfg` switches. Every helper here produces
//! the same result for both backends: sums are order-independent and collected
//! vectors keep index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when work is actually dispatched to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Sums `f(i)` for `i` in `0..n`.
pub fn sum_range<F>(exec: Execution, n: u32, f: F) -> u64
where
    F: Fn(u32) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = exec;
    (0..n).map(f).sum()
}

/// Concatenates `f(i)` for `i` in `0..n`, in index order.
pub fn flat_map_range<T, F>(exec: Execution, n: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().flat_map_iter(f).collect();
    }
    let _ = exec;
    (0..n).flat_map(f).collect()
}

/// Maps over a slice, keeping order.
pub fn map_slice<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// True iff `pred(i)` holds for all `i` in `0..n`.
pub fn all_range<F>(exec: Execution, n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().all(pred);
    }
    let _ = exec;
    (0..n).all(pred)
}
