//! Trial-level parallelism.
//!
//! With the `parallel` feature (on by default) work is spread over a rayon
//! pool of `workers` threads (`0` = rayon's default). Without it, or with
//! `workers == 1`, everything runs on the calling thread. Results are always
//! returned in index order, so output never depends on scheduling.

use std::ops::Range;

/// `f(0), f(1), ..., f(count - 1)`.
pub fn map_indexed<T, F>(count: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers != 1 {
        return map_indexed_parallel(count, workers, f);
    }
    let _ = workers;
    map_indexed_sequential(count, f)
}

pub fn map_indexed_sequential<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_indexed_parallel<T, F>(count: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    with_pool(workers, || (0..count).into_par_iter().map(f).collect())
}

/// Apply `f` to consecutive index ranges of at most `chunk` items.
pub fn map_chunks<T, F>(count: usize, chunk: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let chunks = count.div_ceil(chunk);
    map_indexed(chunks, workers, |c| {
        f(c * chunk..((c + 1) * chunk).min(count))
    })
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(op),
        // Fall back to the global pool if a dedicated one cannot be built.
        Err(_) => op(),
    }
}

/// Whether this build runs trials on a thread pool.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
