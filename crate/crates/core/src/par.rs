//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without
//! it they are plain iterator loops. Every helper preserves input order, so
//! results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum matrix dimension before row-parallel kernels are used.
pub const PAR_MIN_DIM: usize = 64;

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Fill `out` in row chunks of `width`, calling `f(row, chunk)`. Runs in
/// parallel only when `rows >= PAR_MIN_DIM`.
pub fn fill_rows<T, F>(out: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if width == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        if out.len() / width >= PAR_MIN_DIM {
            out.par_chunks_mut(width)
                .enumerate()
                .for_each(|(r, chunk)| f(r, chunk));
            return;
        }
    }
    out.chunks_mut(width)
        .enumerate()
        .for_each(|(r, chunk)| f(r, chunk));
}

/// Run `f` with every helper above forced onto a single thread.
///
/// Used by the benches to compare the rayon path with sequential execution
/// inside one binary.
pub fn sequential<R, F>(f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map(|pool| pool.install(f))
            .expect("single-thread pool")
    }
    #[cfg(not(feature = "parallel"))]
    {
        f()
    }
}
