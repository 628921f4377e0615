//! Data-parallel execution helpers. With the `parallel` feature (default)
//! the heavy loops fan out over rayon; without it the same call sites run
//! sequentially. Result order is identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Index of the first item satisfying `pred` (lowest index, deterministic).
pub(crate) fn find_first<T, F>(items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items
            .par_iter()
            .position_first(&pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().position(pred)
    }
}

/// True iff every item satisfies `pred`.
pub(crate) fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().all(pred)
    }
}
