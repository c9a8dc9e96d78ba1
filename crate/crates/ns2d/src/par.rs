//! Thin switch between rayon data-parallel loops and sequential fallbacks.
//!
//! Everything funnels through these helpers so that the `parallel` feature is
//! the single toggle. Reductions stay deterministic regardless of thread
//! count: parallel work only fills indexed slots, the final fold is always
//! sequential and in index order.

/// Apply `f` to every mutable row chunk of `data` (length `row_len` each),
/// passing the row index.
pub fn for_each_row<T: Send, F: Fn(usize, &mut [T]) + Sync + Send>(
    data: &mut [T],
    row_len: usize,
    f: F,
) {
    debug_assert_eq!(data.len() % row_len, 0);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(row_len)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, row) in data.chunks_mut(row_len).enumerate() {
            f(i, row);
        }
    }
}

/// Map rows `0..n` through `f` and collect the results in index order.
pub fn map_rows<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Deterministic sum of per-row partial results: rows are computed in
/// parallel, the final accumulation is sequential in row order.
pub fn sum_rows<F: Fn(usize) -> f64 + Sync + Send>(n: usize, f: F) -> f64 {
    map_rows(n, f).into_iter().sum()
}

/// Same as [`sum_rows`] for 2-vector accumulators.
pub fn sum_rows2<F: Fn(usize) -> [f64; 2] + Sync + Send>(n: usize, f: F) -> [f64; 2] {
    map_rows(n, f)
        .into_iter()
        .fold([0.0, 0.0], |a, v| [a[0] + v[0], a[1] + v[1]])
}

/// Reduce rows by maximum.
pub fn max_rows<F: Fn(usize) -> f64 + Sync + Send>(n: usize, f: F) -> f64 {
    map_rows(n, f).into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// True when the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
