//! Execution strategy for the data-parallel sweeps (grid sampling, oracle
//! restarts). With the default `parallel` feature the work fans out over a
//! rayon pool; without it the same helpers run sequentially, which is
//! useful for bit-identical single-thread baselines and for benchmarking
//! the speedup.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over a slice. Outputs are collected in input
/// order regardless of scheduling, so downstream reductions are
/// deterministic.
#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// True when this build fans work out over rayon.
pub fn parallelism_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Requests a global pool of `n` threads (0 = rayon default). Quietly
/// keeps the current pool when one is already initialized; sequential
/// builds ignore the request.
pub fn configure_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if n > 0 {
            builder = builder.num_threads(n);
        }
        let _ = builder.build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}
