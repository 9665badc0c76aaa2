//! Execution backends for index-driven kernels.
//!
//! All heavy loops in the crate are expressed as a pure function of an index
//! (a grid point or a Monte Carlo sample number). The helpers here run such
//! kernels either data-parallel through rayon (default `parallel` feature)
//! or sequentially. Outputs are identical for both backends: mapped results
//! are collected in index order and tallies are integer sums, which are
//! associative, so the reduction order cannot change the result.
//!
//! The `_seq` variants are always compiled; benchmarks use them to compare
//! backends directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to `0..n` and collects the results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

/// Sequential equivalent of [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Counts how many indices in `0..n` satisfy `pred`.
pub fn count_hits<F>(n: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter(|&i| pred(i)).count() as u64
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_hits_seq(n, pred)
    }
}

/// Sequential equivalent of [`count_hits`].
pub fn count_hits_seq<F>(n: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..n).filter(|&i| pred(i)).count() as u64
}

/// Tallies a four-way classification over `0..n`; `class` must return 0..=3.
pub fn tally4<F>(n: u64, class: F) -> [u64; 4]
where
    F: Fn(u64) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .fold(
                || [0u64; 4],
                |mut acc, i| {
                    acc[class(i)] += 1;
                    acc
                },
            )
            .reduce(
                || [0u64; 4],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        tally4_seq(n, class)
    }
}

/// Sequential equivalent of [`tally4`].
pub fn tally4_seq<F>(n: u64, class: F) -> [u64; 4]
where
    F: Fn(u64) -> usize + Sync + Send,
{
    let mut acc = [0u64; 4];
    for i in 0..n {
        acc[class(i)] += 1;
    }
    acc
}
