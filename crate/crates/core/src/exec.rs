//! Execution mode and search budgets shared by the exhaustive searches.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Whether data-parallel loops may use the rayon pool.
///
/// `Parallel` silently degrades to `Sequential` when the crate is built
/// without the `parallel` feature.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Caps the global worker pool. Must run before the first parallel call;
/// a no-op without the `parallel` feature.
pub fn set_worker_threads(n: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Definition(format!("cannot configure {n} worker threads: {e}")))?;
    let _ = n;
    Ok(())
}

/// Node and wall-clock limits for a search. Exhaustion is always a hard
/// error: callers never receive a silently truncated result.
#[derive(Debug)]
pub struct Budget {
    max_nodes: u64,
    deadline: Option<Instant>,
    started: Instant,
    nodes: AtomicU64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 10_000_000;
    pub const DEFAULT_TIME: Duration = Duration::from_secs(60);

    pub fn new(max_nodes: u64, time: Option<Duration>) -> Self {
        let started = Instant::now();
        Self {
            max_nodes,
            deadline: time.map(|t| started + t),
            started,
            nodes: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX, None)
    }

    /// Records `n` expanded nodes and fails once either limit is passed.
    pub fn charge(&self, stage: &'static str, n: u64) -> Result<()> {
        let used = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.max_nodes || self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::BudgetExhausted { stage, nodes: used });
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_NODES, Some(Self::DEFAULT_TIME))
    }
}

/// Maps `f` over `items`, in parallel when allowed. Output order always
/// matches input order.
pub fn map_vec<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Collects every `i` in `0..n` satisfying `keep`, in ascending order.
pub fn filter_range<F>(mode: ExecMode, n: u64, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter(|&i| keep(i)).collect();
    }
    let _ = mode;
    (0..n).filter(|&i| keep(i)).collect()
}

/// Fallible parallel map; the first error in input order wins.
pub fn try_map_vec<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    map_vec(mode, items, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_trips_on_nodes() {
        let b = Budget::new(10, None);
        assert!(b.charge("t", 5).is_ok());
        assert!(b.charge("t", 5).is_ok());
        let err = b.charge("t", 1).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn budget_trips_on_time() {
        let b = Budget::new(u64::MAX, Some(Duration::ZERO));
        std::thread::sleep(Duration::from_millis(2));
        assert!(b.charge("t", 1).is_err());
    }

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map_vec(ExecMode::Sequential, &xs, |x| x * x);
        let par = map_vec(ExecMode::Parallel, &xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(
            filter_range(ExecMode::Sequential, 500, |i| i % 7 == 3),
            filter_range(ExecMode::Parallel, 500, |i| i % 7 == 3)
        );
    }
}
