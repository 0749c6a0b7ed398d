use std::sync::Arc;

use serde::Serialize;

use super::csp::{PairwiseCsp, SearchStats};
use super::ideals::spec;
use crate::bitset::ElementSet;
use crate::commlattice::CommLattice;
use crate::error::{Error, Result};
use crate::exec::{self, Budget, ExecMode};
use crate::finring::{RingMap, RingTable};
use crate::partial::{prime_violation, PartialIdeal, PartialStructure};

/// A point of the limit: one prime of each maximal commutative subring.
/// `choice[m]` indexes the primes of the `m`-th maximal subring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompatibleFamily {
    pub choice: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PartSpecResult {
    ring: Arc<RingTable>,
    maximal: Vec<usize>,
    local: Vec<Vec<ElementSet>>,
    families: Vec<CompatibleFamily>,
    ideals: Vec<PartialIdeal>,
    stats: SearchStats,
}

#[derive(Serialize)]
struct FamilyJson {
    /// lattice index of each maximal subring -> elements of its chosen prime
    assignments: Vec<(usize, Vec<usize>)>,
    ideal: Vec<usize>,
}

impl PartSpecResult {
    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    /// Lattice indices of the maximal subrings, the family coordinates.
    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }

    /// Primes of each maximal subring, as ambient element sets.
    pub fn local_spectra(&self) -> &[Vec<ElementSet>] {
        &self.local
    }

    pub fn families(&self) -> &[CompatibleFamily] {
        &self.families
    }

    pub fn ideals(&self) -> &[PartialIdeal] {
        &self.ideals
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn is_complete(&self) -> bool {
        self.stats.complete
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Emptiness is only meaningful for a complete search.
    pub fn certified_empty(&self) -> bool {
        self.is_complete() && self.is_empty()
    }

    pub fn index_of(&self, members: &ElementSet) -> Option<usize> {
        self.ideals.iter().position(|p| p.members() == members)
    }

    /// Families and glued ideals; search statistics are kept out so that the
    /// value is reproducible.
    pub fn to_json(&self) -> serde_json::Value {
        let families: Vec<FamilyJson> = self
            .families
            .iter()
            .zip(&self.ideals)
            .map(|(f, ideal)| FamilyJson {
                assignments: self
                    .maximal
                    .iter()
                    .enumerate()
                    .map(|(m, &lat_idx)| (lat_idx, self.local[m][f.choice[m]].to_vec()))
                    .collect(),
                ideal: ideal.members().to_vec(),
            })
            .collect();
        serde_json::json!({
            "ring": self.ring.label(),
            "complete": self.is_complete(),
            "count": self.len(),
            "maximal_subrings": self.maximal,
            "families": families,
        })
    }
}

/// Prime partial ideals, computed as the compatible families of primes over
/// the maximal commutative subrings. Each glued ideal is re-verified with
/// the pairwise primality checker.
///
/// A budget overrun returns the families found so far with
/// `stats.complete == false`.
pub fn part_spec(lat: &CommLattice, budget: &Budget, mode: ExecMode) -> Result<PartSpecResult> {
    let ring = lat.ring();
    let maximal = lat.maximal().to_vec();
    let local: Vec<Vec<ElementSet>> = exec::try_map_vec(mode, &maximal, |&i| {
        let sub = lat.subring(i);
        let (c, embedding) = sub.to_ring(ring, format!("C{i}"))?;
        let s = spec(&Arc::new(c), budget)?;
        Ok(s.primes()
            .iter()
            .map(|p| ElementSet::from_indices(ring.size(), p.iter().map(|x| embedding[x])))
            .collect())
    })?;

    let members: Vec<&ElementSet> = maximal.iter().map(|&i| lat.subring(i).members()).collect();
    let csp = PairwiseCsp::new(local.iter().map(Vec::len).collect(), |u, a, v, b| {
        local[u][a].intersection(members[v]) == local[v][b].intersection(members[u])
    });
    let mut order: Vec<usize> = (0..maximal.len()).collect();
    order.sort_by_key(|&m| (local[m].len(), m));
    let (solutions, stats) = csp.solve(&order, budget, "prime partial ideal search", mode);

    let structure = PartialStructure::standard(ring);
    let mut families = Vec::with_capacity(solutions.len());
    let mut ideals = Vec::with_capacity(solutions.len());
    for choice in solutions {
        let mut union = ElementSet::empty(ring.size());
        for (m, &a) in choice.iter().enumerate() {
            union.union_with(&local[m][a]);
        }
        if let Some(v) = prime_violation(&structure, &union)? {
            return Err(Error::NotPartialIdeal(format!(
                "glued family {choice:?} is not prime: {v:?}"
            )));
        }
        families.push(CompatibleFamily { choice });
        ideals.push(PartialIdeal::new(&structure, union)?);
    }
    Ok(PartSpecResult { ring: Arc::clone(ring), maximal, local, families, ideals, stats })
}

/// `partSpec(f)`: each prime partial ideal `P` of the codomain goes to
/// `f⁻¹(P)`, located in the domain's computed spectrum. Returned as an index
/// table from `codomain.ideals()` into `domain.ideals()`.
pub fn part_spec_map(f: &RingMap, domain: &PartSpecResult, codomain: &PartSpecResult) -> Result<Vec<usize>> {
    if !domain.is_complete() || !codomain.is_complete() {
        return Err(Error::IncompleteLattice);
    }
    if **f.domain() != **domain.ring() || **f.codomain() != **codomain.ring() {
        return Err(Error::Definition("spectra do not match the map's rings".into()));
    }
    if let Some((cond, w)) = f.hom_violation() {
        return Err(Error::NotRingHom(format!("{cond} fails at {w:?}")));
    }
    codomain
        .ideals()
        .iter()
        .map(|p| {
            domain
                .index_of(&f.preimage(p.members()))
                .ok_or_else(|| Error::MissingPreimage(domain.ring().label().to_string()))
        })
        .collect()
}
