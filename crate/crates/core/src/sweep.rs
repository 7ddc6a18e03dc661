//! Seeded sweeps over independent cases.
//!
//! [`sweep`] fans out over seeds with rayon when the `parallel` feature is on
//! and runs in order otherwise; [`sweep_sequential`] always runs in order.
//! Each case gets its own seed, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluate `f` on every seed; output order follows `seeds`.
pub fn sweep<T, F>(seeds: &[u64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        seeds.par_iter().map(|&s| f(s)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(seeds, f)
    }
}

pub fn sweep_sequential<T, F>(seeds: &[u64], f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    seeds.iter().map(|&s| f(s)).collect()
}

/// Whether [`sweep`] runs on the rayon pool in this build.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
