//! Fan-out helpers for the data-parallel inner loops.
//!
//! Strands of a trace, regular heights, sectors and monodromy generators are
//! all independent, so the pipeline maps over them with [`map`] / [`try_map`].
//! With the `parallel` feature enabled the work runs on the rayon pool when
//! `parallel == true`; without the feature the flag is ignored and the loops
//! run sequentially. Results are collected in input order either way, so the
//! output is identical across all configurations.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, U, F>(parallel: bool, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.into_par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

pub fn try_map<T, U, F>(parallel: bool, items: Vec<T>, f: F) -> crate::Result<Vec<U>>
where
    T: Send,
    U: Send,
    F: Fn(T) -> crate::Result<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.into_par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

/// Sequential counterpart with the same shape, kept public so benches can
/// compare both strategies on identical workloads.
pub fn map_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
