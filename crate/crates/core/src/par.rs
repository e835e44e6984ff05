//! Ordered map over independent work items, parallel when the `parallel`
//! feature is enabled and sequential otherwise.

use crate::{Error, Result};

/// How independent subproblems are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon data parallelism. `threads = None` uses the global pool.
    /// Without the `parallel` feature this degrades to [`Execution::Sequential`].
    #[default]
    Parallel,
    ParallelWith {
        threads: usize,
    },
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && !matches!(self, Execution::Sequential)
    }
}

/// Maps `f` over `items`, returning results in input order regardless of scheduling.
pub(crate) fn map_ordered<T, R, F>(items: Vec<T>, exec: Execution, f: F) -> Result<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => Ok(items.into_iter().map(f).collect()),
        Execution::Parallel => Ok(parallel_map(items, f)),
        Execution::ParallelWith { threads } => {
            if threads == 0 {
                return Err(Error::Config("thread count must be positive".into()));
            }
            with_pool(threads, || parallel_map(items, f))
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(op))
}

#[cfg(not(feature = "parallel"))]
fn with_pool<R: Send>(_threads: usize, op: impl FnOnce() -> R + Send) -> Result<R> {
    Ok(op())
}
