//! Data-parallel map used by the verification sweeps.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it, or with [`Executor::Sequential`], items run in order on the
//! calling thread. Output order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Executor {
    Sequential,
    #[default]
    Parallel,
}

impl Executor {
    /// `Parallel` degrades to `Sequential` when the feature is off.
    pub fn effective(self) -> Executor {
        if cfg!(feature = "parallel") {
            self
        } else {
            Executor::Sequential
        }
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self.effective() {
            Executor::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Executor::Parallel => items.par_iter().map(f).collect(),
            #[cfg(not(feature = "parallel"))]
            Executor::Parallel => unreachable!("effective() never yields Parallel without the feature"),
        }
    }

    /// Runs `f` inside a pool of `jobs` threads (parallel builds only).
    pub fn with_jobs<R: Send>(self, jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if let (Executor::Parallel, Some(jobs)) = (self.effective(), jobs) {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("thread pool");
            return pool.install(f);
        }
        let _ = jobs;
        f()
    }
}
