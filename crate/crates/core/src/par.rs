//! Thin switch between rayon and plain iterators.
//!
//! Every data-parallel loop in the crate goes through [`map_indexed`], which
//! preserves input order in its output. Results are therefore identical for
//! [`Execution::Sequential`] and [`Execution::Parallel`], and for any rayon
//! thread count. Without the `parallel` feature both modes run sequentially.

/// How data-parallel loops are executed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when this mode actually dispatches to rayon in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Applies `f` to `0..len` and collects the results in index order.
pub fn map_indexed<R, F>(exec: Execution, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}
