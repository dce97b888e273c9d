//! Data-parallel helpers with a sequential fallback.
//!
//! Every reduction here folds results in input order, so the output does not
//! depend on the thread schedule. Without the `parallel` feature,
//! [`Parallelism::Parallel`] runs sequentially.

/// Execution mode for the inner loops of table construction and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// `true` when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Maps every item and collects results in input order.
pub fn map_collect<T, R, F>(mode: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Maps every item and folds the results left to right with `reduce`.
pub fn map_reduce<T, R, F, G>(mode: Parallelism, items: &[T], init: R, f: F, reduce: G) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    G: FnMut(R, R) -> R,
{
    map_collect(mode, items, f).into_iter().fold(init, reduce)
}
