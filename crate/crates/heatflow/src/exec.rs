//! Order-preserving map helpers over slices.
//!
//! All bulk work in this crate (sweep grids, certificate rows, lemma
//! scans) is embarrassingly parallel, so it funnels through these two
//! functions. With the default `parallel` feature, [`ordered_map`] runs on
//! the rayon pool; without it, it degrades to a plain sequential loop with
//! identical output. [`ordered_map_seq`] is always sequential and exists so
//! benchmarks can compare the two paths inside one binary.
//!
//! Both preserve input order, so results are bit-identical regardless of
//! feature flags or thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order. Parallel when the `parallel`
/// feature is enabled.
pub fn ordered_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Sequential counterpart of [`ordered_map`], available under every feature
/// combination.
pub fn ordered_map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: FnMut(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Fallible [`ordered_map`]: returns the error of the earliest (by input
/// index) item that failed, independent of execution order.
pub fn try_ordered_map<T, U, F>(items: &[T], f: F) -> crate::Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> crate::Result<U> + Sync + Send,
{
    ordered_map(items, f).into_iter().collect()
}
