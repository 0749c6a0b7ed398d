//! Backtracking search for compatible families: one value per variable,
//! with a binary compatibility relation between every pair of variables.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::exec::{self, Budget, ExecMode};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    #[serde(serialize_with = "as_secs")]
    pub wall_time: Duration,
    /// True only when the search ran to exhaustion within its budget.
    pub complete: bool,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

pub(crate) struct PairwiseCsp {
    sizes: Vec<usize>,
    /// `allowed[u][v][a]`: values of `v` compatible with `u = a`.
    allowed: Vec<Vec<Vec<ElementSet>>>,
}

impl PairwiseCsp {
    pub(crate) fn new(sizes: Vec<usize>, compatible: impl Fn(usize, usize, usize, usize) -> bool) -> Self {
        let n = sizes.len();
        let allowed = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        (0..sizes[u])
                            .map(|a| {
                                if u == v {
                                    ElementSet::from_indices(sizes[v], [a])
                                } else {
                                    ElementSet::from_indices(
                                        sizes[v],
                                        (0..sizes[v]).filter(|&b| compatible(u, a, v, b)),
                                    )
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { sizes, allowed }
    }

    /// All solutions, each listing one value per variable in variable order.
    /// Variables are branched in `order`; the first one is split across
    /// workers.
    pub(crate) fn solve(
        &self,
        order: &[usize],
        budget: &Budget,
        stage: &'static str,
        mode: ExecMode,
    ) -> (Vec<Vec<usize>>, SearchStats) {
        let n = self.sizes.len();
        let nodes = AtomicU64::new(0);
        let backtracks = AtomicU64::new(0);
        let domains: Vec<ElementSet> = self.sizes.iter().map(|&s| ElementSet::full(s)).collect();
        if n == 0 {
            return (
                vec![vec![]],
                SearchStats { nodes: 0, backtracks: 0, wall_time: budget.elapsed(), complete: true },
            );
        }
        let first = order[0];
        let roots: Vec<usize> = domains[first].to_vec();
        let branches = exec::map_vec(mode, &roots, |&a| {
            let mut out = Vec::new();
            let mut assignment = vec![usize::MAX; n];
            let ok = self.dfs(order, 0, Some(a), &domains, &mut assignment, &mut out, budget, stage, &nodes, &backtracks);
            (out, ok)
        });
        let complete = branches.iter().all(|(_, ok)| *ok);
        let mut solutions: Vec<Vec<usize>> = branches.into_iter().flat_map(|(s, _)| s).collect();
        solutions.sort();
        let stats = SearchStats {
            nodes: nodes.into_inner(),
            backtracks: backtracks.into_inner(),
            wall_time: budget.elapsed(),
            complete,
        };
        (solutions, stats)
    }

    /// Returns false when the budget ran out.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        order: &[usize],
        depth: usize,
        forced: Option<usize>,
        domains: &[ElementSet],
        assignment: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &Budget,
        stage: &'static str,
        nodes: &AtomicU64,
        backtracks: &AtomicU64,
    ) -> bool {
        if depth == order.len() {
            out.push(assignment.clone());
            return true;
        }
        let var = order[depth];
        let values: Vec<usize> = match forced {
            Some(a) => vec![a],
            None => domains[var].to_vec(),
        };
        for a in values {
            nodes.fetch_add(1, Ordering::Relaxed);
            if budget.charge(stage, 1).is_err() {
                return false;
            }
            let mut next = domains.to_vec();
            let mut wiped = false;
            for &later in &order[depth + 1..] {
                next[later] = next[later].intersection(&self.allowed[var][later][a]);
                if next[later].is_empty() {
                    wiped = true;
                    break;
                }
            }
            if wiped {
                backtracks.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            assignment[var] = a;
            if !self.dfs(order, depth + 1, None, &next, assignment, out, budget, stage, nodes, backtracks) {
                return false;
            }
            assignment[var] = usize::MAX;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_product() {
        let csp = PairwiseCsp::new(vec![2, 3, 2], |_, _, _, _| true);
        let (sols, stats) = csp.solve(&[0, 1, 2], &Budget::unlimited(), "t", ExecMode::Sequential);
        assert_eq!(sols.len(), 12);
        assert!(stats.complete);
    }

    #[test]
    fn equality_constraints() {
        let csp = PairwiseCsp::new(vec![3, 3, 3], |_, a, _, b| a == b);
        for mode in [ExecMode::Sequential, ExecMode::Parallel] {
            let (sols, _) = csp.solve(&[2, 0, 1], &Budget::unlimited(), "t", mode);
            assert_eq!(sols, vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
        }
    }

    #[test]
    fn unsatisfiable() {
        let csp = PairwiseCsp::new(vec![2, 2, 2], |_, a, _, b| a != b);
        let (sols, stats) = csp.solve(&[0, 1, 2], &Budget::unlimited(), "t", ExecMode::Sequential);
        assert!(sols.is_empty());
        assert!(stats.complete);
        assert!(stats.backtracks > 0);
    }

    #[test]
    fn budget_marks_incomplete() {
        let csp = PairwiseCsp::new(vec![4; 6], |_, _, _, _| true);
        let (_, stats) = csp.solve(&[0, 1, 2, 3, 4, 5], &Budget::new(50, None), "t", ExecMode::Sequential);
        assert!(!stats.complete);
    }
}
