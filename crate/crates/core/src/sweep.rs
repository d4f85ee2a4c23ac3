//! Order-preserving map over grid points, sequential or on a rayon pool.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use crate::error::Error;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    Sequential,
    /// rayon global pool.
    #[default]
    Parallel,
    /// Dedicated pool with this many threads.
    Workers(usize),
}

impl Execution {
    pub fn from_workers(workers: Option<usize>) -> Self {
        match workers {
            None => Execution::Parallel,
            Some(0) | Some(1) => Execution::Sequential,
            Some(n) => Execution::Workers(n),
        }
    }
}

/// Applies `f` to every item and returns results in input order. Results
/// never depend on the execution mode because each point is computed
/// independently.
pub fn map_indexed<T, R, F>(items: &[T], exec: Execution, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => Ok(items.iter().enumerate().map(|(i, t)| f(i, t)).collect()),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            Ok(items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect())
        }
        #[cfg(feature = "parallel")]
        Execution::Workers(n) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(|| items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()))
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel | Execution::Workers(_) => Ok(items.iter().enumerate().map(|(i, t)| f(i, t)).collect()),
    }
}
