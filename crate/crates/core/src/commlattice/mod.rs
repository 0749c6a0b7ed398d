//! The poset of unital commutative subrings of a finite ring.
//!
//! Enumeration is a seeded breadth-first search over closures: start from
//! the prime subring and every singly generated subring, then repeatedly
//! extend each known commutative subring `C` by each element `x` of its
//! centralizer outside `C`, taking `closure(C ∪ {x})`. Every commutative
//! subring is reached, since it is generated by finitely many pairwise
//! commuting elements added one at a time.

mod cache;

use std::collections::HashSet;
use std::sync::Arc;

pub use cache::LatticeCache;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::{self, Budget, ExecMode};
use crate::finring::{centralizer, closure_set, RingTable, Subring};

#[derive(Clone, Debug)]
pub struct CommLattice {
    ring: Arc<RingTable>,
    subrings: Vec<Subring>,
    /// `above[i]` holds every `j` with `subrings[i] ⊆ subrings[j]`.
    above: Vec<ElementSet>,
    maximal: Vec<usize>,
    nodes: u64,
}

impl CommLattice {
    /// Builds the lattice from an already complete list of commutative
    /// subrings. The list is sorted into canonical order.
    pub fn from_subrings(ring: Arc<RingTable>, mut subrings: Vec<Subring>, nodes: u64) -> Self {
        subrings.sort();
        subrings.dedup();
        let n = subrings.len();
        let above: Vec<ElementSet> = subrings
            .iter()
            .map(|s| {
                ElementSet::from_indices(
                    n,
                    (0..n).filter(|&j| s.members().is_subset(subrings[j].members())),
                )
            })
            .collect();
        let maximal = (0..n).filter(|&i| above[i].len() == 1).collect();
        Self { ring, subrings, above, maximal, nodes }
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn subrings(&self) -> &[Subring] {
        &self.subrings
    }

    pub fn len(&self) -> usize {
        self.subrings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subrings.is_empty()
    }

    pub fn subring(&self, i: usize) -> &Subring {
        &self.subrings[i]
    }

    /// `subrings[i] ⊆ subrings[j]`.
    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }

    /// Closures computed during enumeration (zero for cache loads).
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn index_of(&self, members: &ElementSet) -> Option<usize> {
        self.subrings.iter().position(|s| s.members() == members)
    }

    /// The prime subring, which is the smallest member.
    pub fn scalar_index(&self) -> usize {
        0
    }
}

pub fn enumerate_commutative_subrings(
    ring: &Arc<RingTable>,
    budget: &Budget,
    mode: ExecMode,
) -> Result<CommLattice> {
    const STAGE: &str = "commutative subring enumeration";
    let r = &**ring;

    let seeds: Vec<usize> = r.elements().collect();
    budget.charge(STAGE, seeds.len() as u64 + 1)?;
    let mut known: HashSet<ElementSet> = HashSet::new();
    let mut frontier = Vec::new();
    let consider = |s: ElementSet, known: &mut HashSet<ElementSet>, frontier: &mut Vec<ElementSet>| {
        if known.insert(s.clone()) {
            frontier.push(s);
        }
    };
    consider(closure_set(r, []), &mut known, &mut frontier);
    for s in exec::map_vec(mode, &seeds, |&a| closure_set(r, [a])) {
        consider(s, &mut known, &mut frontier);
    }

    while !frontier.is_empty() {
        frontier.sort();
        let expansions = exec::try_map_vec(mode, &frontier, |c| {
            let outside = centralizer(r, c).members().difference(c);
            budget.charge(STAGE, outside.len() as u64)?;
            Ok(outside
                .iter()
                .map(|x| closure_set(r, c.iter().chain([x])))
                .collect::<Vec<_>>())
        })?;
        let mut next = Vec::new();
        for s in expansions.into_iter().flatten() {
            consider(s, &mut known, &mut next);
        }
        frontier = next;
    }

    let subrings: Vec<Subring> = known
        .into_iter()
        .map(|s| Subring::from_closed(r, s))
        .collect();
    debug_assert!(subrings.iter().all(Subring::is_commutative));
    Ok(CommLattice::from_subrings(Arc::clone(ring), subrings, budget.nodes()))
}

pub fn maximal_subrings(lat: &CommLattice) -> Vec<&Subring> {
    lat.maximal.iter().map(|&i| &lat.subrings[i]).collect()
}

/// Every subring lies below some member of `subset`.
pub fn is_cofinal(lat: &CommLattice, subset: &[usize]) -> Result<bool> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= lat.len()) {
        return Err(Error::ElementOutOfRange { index: bad, size: lat.len() });
    }
    Ok((0..lat.len()).all(|i| subset.iter().any(|&j| lat.includes(i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gf, make_matrix_ring, make_zmod};

    fn lattice(r: RingTable) -> CommLattice {
        enumerate_commutative_subrings(&Arc::new(r), &Budget::unlimited(), ExecMode::Sequential)
            .unwrap()
    }

    #[test]
    fn f4_has_two_subrings() {
        let lat = lattice(make_gf(2, 2).unwrap());
        let sizes: Vec<usize> = lat.subrings().iter().map(Subring::len).collect();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(lat.maximal(), &[1]);
    }

    #[test]
    fn commutative_ring_is_unique_maximum() {
        let lat = lattice(make_zmod(12).unwrap());
        assert_eq!(lat.maximal().len(), 1);
        assert_eq!(lat.subring(lat.maximal()[0]).len(), 12);
        assert_eq!(lat.len(), 1);
    }

    #[test]
    fn m2f2_lattice_shape() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let lat = lattice(make_matrix_ring(&f2, 2).unwrap());
        assert_eq!(lat.len(), 8);
        assert_eq!(lat.maximal().len(), 7);
        assert!(maximal_subrings(&lat).iter().all(|s| s.len() == 4));
        assert!(is_cofinal(&lat, lat.maximal()).unwrap());
        assert!(!is_cofinal(&lat, &[lat.scalar_index()]).unwrap());
        let all: Vec<usize> = (0..lat.len()).collect();
        assert!(is_cofinal(&lat, &all).unwrap());
        assert!(is_cofinal(&lat, &[99]).is_err());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let m = Arc::new(make_matrix_ring(&f2, 2).unwrap());
        let err = enumerate_commutative_subrings(&m, &Budget::new(20, None), ExecMode::Sequential)
            .unwrap_err();
        assert!(err.is_budget());
    }
}
