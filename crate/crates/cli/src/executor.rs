use fracpow_core::{NodeExecutor, Sequential};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Runs node solves either inline or on a dedicated rayon pool.
///
/// Results come back in job order either way, so outputs do not depend on
/// the thread count.
#[derive(Debug)]
pub enum Executor {
    Sequential,
    Pool(ThreadPool),
}

impl Executor {
    /// `None` or `Some(0)` uses rayon's default thread count; `Some(1)` runs inline.
    pub fn with_threads(threads: Option<usize>) -> Result<Self, ThreadPoolBuildError> {
        match threads {
            Some(1) => Ok(Executor::Sequential),
            other => {
                let mut builder = ThreadPoolBuilder::new();
                if let Some(n) = other.filter(|&n| n > 0) {
                    builder = builder.num_threads(n);
                }
                Ok(Executor::Pool(builder.build()?))
            }
        }
    }

    pub fn threads(&self) -> usize {
        match self {
            Executor::Sequential => 1,
            Executor::Pool(p) => p.current_num_threads(),
        }
    }
}

impl NodeExecutor for Executor {
    fn run<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        match self {
            Executor::Sequential => Sequential.run(count, job),
            Executor::Pool(pool) => pool.install(|| (0..count).into_par_iter().map(&job).collect()),
        }
    }
}
