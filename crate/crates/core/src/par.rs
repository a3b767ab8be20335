//! Thin dispatch between rayon and plain iterators.

use crate::config::Execution;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// First `Some` in item order, regardless of which worker finds it.
pub fn find_map_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().find_map_first(f),
        _ => items.iter().find_map(f),
    }
}

/// Folds each contiguous chunk of `0..len` with `fold`, then merges the
/// partial results left to right with `merge`.
pub fn fold_range<A, I, F, M>(exec: Execution, len: usize, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..len)
            .into_par_iter()
            .fold(&init, &fold)
            .reduce(&init, &merge),
        _ => {
            let _ = &merge;
            (0..len).fold(init(), fold)
        }
    }
}
