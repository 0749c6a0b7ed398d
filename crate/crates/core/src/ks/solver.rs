use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ray::dot;
use super::system::RaySystem;
use crate::error::{Error, Result};
use crate::exec::Budget;
use crate::primespec::SearchStats;

/// Branching rule for the coloring search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchOrder {
    /// Ray in the most bases first, value 1 before 0.
    MostBases,
    /// Seeded random ray priority and value order.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Coloring {
    Sat { witness: Vec<u8> },
    Unsat,
    /// Budget ran out; nothing is claimed.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoringResult {
    #[serde(flatten)]
    pub status: Coloring,
    #[serde(skip)]
    pub stats: SearchStats,
}

impl ColoringResult {
    pub fn is_unsat(&self) -> bool {
        self.status == Coloring::Unsat && self.stats.complete
    }

    pub fn is_sat(&self) -> bool {
        matches!(self.status, Coloring::Sat { .. })
    }
}

const FREE: i8 = -1;

struct Search<'a> {
    bases: &'a [Vec<usize>],
    /// bases containing each ray
    incidence: Vec<Vec<usize>>,
    /// orthogonal partners of each ray
    partners: Vec<Vec<usize>>,
    priority: Vec<usize>,
    one_first: Vec<bool>,
    budget: &'a Budget,
    nodes: u64,
    backtracks: u64,
}

impl Search<'_> {
    /// Unit propagation to fixpoint. Returns false on a conflict.
    fn propagate(&self, value: &mut [i8], mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            if value[r] == 1 {
                for &other in self.incidence[r].iter().flat_map(|&b| &self.bases[b]).chain(&self.partners[r]) {
                    if other == r {
                        continue;
                    }
                    match value[other] {
                        1 => return false,
                        FREE => {
                            value[other] = 0;
                            queue.push(other);
                        }
                        _ => {}
                    }
                }
            } else {
                for &b in &self.incidence[r] {
                    let basis = &self.bases[b];
                    if basis.iter().any(|&x| value[x] == 1) {
                        continue;
                    }
                    let mut free = basis.iter().filter(|&&x| value[x] == FREE);
                    match (free.next(), free.next()) {
                        (None, _) => return false,
                        (Some(&x), None) => {
                            value[x] = 1;
                            queue.push(x);
                        }
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn assign(&self, value: &[i8], r: usize, v: i8) -> Option<Vec<i8>> {
        let mut next = value.to_vec();
        next[r] = v;
        self.propagate(&mut next, vec![r]).then_some(next)
    }

    fn solve(&mut self, value: Vec<i8>) -> Result<Option<Vec<i8>>> {
        self.budget.charge("Kochen-Specker coloring", 1)?;
        self.nodes += 1;
        let Some(r) = (0..value.len()).filter(|&r| value[r] == FREE && !self.incidence[r].is_empty()).min_by_key(|&r| self.priority[r])
        else {
            return Ok(Some(value));
        };
        let order: [i8; 2] = if self.one_first[r] { [1, 0] } else { [0, 1] };
        for v in order {
            if let Some(next) = self.assign(&value, r, v) {
                if let Some(found) = self.solve(next)? {
                    return Ok(Some(found));
                }
            }
            self.backtracks += 1;
        }
        Ok(None)
    }
}

/// Searches for a {0,1}-coloring with exactly one 1 in every basis and
/// never two 1s on orthogonal rays. Both rules hold for the values of a
/// partial morphism on rank-one projections: orthogonal projections
/// multiply to zero, and a basis sums to the identity.
pub fn ks_colorable(sys: &RaySystem, order: BranchOrder, budget: &Budget) -> Result<ColoringResult> {
    if !sys.bases_complete()? {
        return Err(Error::IncompleteBases(format!("{} bases listed for {} rays", sys.bases().len(), sys.len())));
    }
    let started = Instant::now();
    let n = sys.len();
    let mut incidence = vec![Vec::new(); n];
    for (b, basis) in sys.bases().iter().enumerate() {
        for &r in basis {
            incidence[r].push(b);
        }
    }
    let mut partners = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if dot(&sys.rays()[i], &sys.rays()[j])?.is_zero() {
                partners[i].push(j);
                partners[j].push(i);
            }
        }
    }
    let (priority, one_first) = match order {
        BranchOrder::MostBases => {
            let mut ranked: Vec<usize> = (0..n).collect();
            ranked.sort_by_key(|&r| (std::cmp::Reverse(incidence[r].len()), r));
            (invert(&ranked), vec![true; n])
        }
        BranchOrder::Shuffled(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ranked: Vec<usize> = (0..n).collect();
            ranked.shuffle(&mut rng);
            (invert(&ranked), (0..n).map(|_| rng.gen_bool(0.5)).collect())
        }
    };
    let mut search = Search {
        bases: sys.bases(),
        incidence,
        partners,
        priority,
        one_first,
        budget,
        nodes: 0,
        backtracks: 0,
    };
    let outcome = search.solve(vec![FREE; n]);
    let mut stats = SearchStats {
        nodes: search.nodes,
        backtracks: search.backtracks,
        wall_time: started.elapsed(),
        complete: true,
    };
    let status = match outcome {
        Ok(Some(value)) => {
            let witness: Vec<u8> = value.iter().map(|&v| u8::from(v == 1)).collect();
            if let Some(b) = coloring_violation(sys, &witness)? {
                return Err(Error::Definition(format!("search produced an invalid coloring at {b:?}")));
            }
            Coloring::Sat { witness }
        }
        Ok(None) => Coloring::Unsat,
        Err(e) if e.is_budget() => {
            stats.complete = false;
            Coloring::Unknown
        }
        Err(e) => return Err(e),
    };
    Ok(ColoringResult { status, stats })
}

fn invert(ranked: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; ranked.len()];
    for (i, &r) in ranked.iter().enumerate() {
        pos[r] = i;
    }
    pos
}

/// Independent witness check: returns an offending basis or orthogonal
/// pair, or `None` if the coloring is valid.
pub fn coloring_violation(sys: &RaySystem, witness: &[u8]) -> Result<Option<Vec<usize>>> {
    if witness.len() != sys.len() {
        return Err(Error::LengthMismatch { expected: sys.len(), got: witness.len() });
    }
    for basis in sys.bases() {
        if basis.iter().filter(|&&r| witness[r] == 1).count() != 1 {
            return Ok(Some(basis.clone()));
        }
    }
    let ones: Vec<usize> = (0..sys.len()).filter(|&r| witness[r] == 1).collect();
    for (i, &x) in ones.iter().enumerate() {
        for &y in &ones[i + 1..] {
            if dot(&sys.rays()[x], &sys.rays()[y])?.is_zero() {
                return Ok(Some(vec![x, y]));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ks::{generate_peres, lift_to_dimension};

    #[test]
    fn axes_are_colorable() {
        let r = ks_colorable(&RaySystem::axes(3).unwrap(), BranchOrder::MostBases, &Budget::unlimited()).unwrap();
        assert!(r.is_sat());
        let empty = RaySystem::new(3, vec![]).unwrap().0;
        assert!(ks_colorable(&empty, BranchOrder::MostBases, &Budget::unlimited()).unwrap().is_sat());
    }

    #[test]
    fn peres_is_not_colorable() {
        let p = generate_peres();
        assert!(ks_colorable(&p, BranchOrder::MostBases, &Budget::unlimited()).unwrap().is_unsat());
        for seed in 0..5 {
            assert!(ks_colorable(&p, BranchOrder::Shuffled(seed), &Budget::unlimited()).unwrap().is_unsat());
        }
    }

    #[test]
    fn lifts() {
        let l = lift_to_dimension(&generate_peres(), 4).unwrap();
        assert!(ks_colorable(&l, BranchOrder::MostBases, &Budget::unlimited()).unwrap().is_unsat());
        let a = lift_to_dimension(&RaySystem::axes(3).unwrap(), 4).unwrap();
        assert!(ks_colorable(&a, BranchOrder::MostBases, &Budget::unlimited()).unwrap().is_sat());
    }

    #[test]
    fn incomplete_bases_rejected() {
        let p = generate_peres().with_bases(vec![]);
        assert!(matches!(
            ks_colorable(&p, BranchOrder::MostBases, &Budget::unlimited()),
            Err(Error::IncompleteBases(_))
        ));
    }

    #[test]
    fn budget_gives_unknown() {
        let r = ks_colorable(&generate_peres(), BranchOrder::MostBases, &Budget::new(2, None)).unwrap();
        assert_eq!(r.status, Coloring::Unknown);
        assert!(!r.stats.complete);
    }
}
