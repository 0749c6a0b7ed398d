use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Budget;
use crate::finring::{RingMap, RingTable};
use crate::partial::{is_ideal_of, is_prime_ideal_of};

/// All ideals of a finite commutative ring, in canonical order.
///
/// Every ideal is a finite sum of principal ideals, so the list is the
/// fixpoint of joining principal ideals onto known ideals.
pub fn enumerate_ideals(ring: &RingTable, budget: &Budget) -> Result<Vec<ElementSet>> {
    const STAGE: &str = "ideal enumeration";
    if !ring.is_commutative() {
        return Err(Error::NotCommutative(ring.label().to_string()));
    }
    budget.charge(STAGE, ring.size() as u64)?;
    let mut principal: Vec<ElementSet> = ring
        .elements()
        .map(|a| ElementSet::from_indices(ring.size(), ring.elements().map(|r| ring.mul(r, a))))
        .collect();
    principal.sort();
    principal.dedup();

    let mut known: HashSet<ElementSet> = principal.iter().cloned().collect();
    let mut frontier = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for ideal in &frontier {
            budget.charge(STAGE, principal.len() as u64)?;
            for p in &principal {
                if p.is_subset(ideal) {
                    continue;
                }
                let sum = additive_span(ring, ideal, p.iter());
                if known.insert(sum.clone()) {
                    next.push(sum);
                }
            }
        }
        frontier = next;
    }
    let mut ideals: Vec<ElementSet> = known.into_iter().collect();
    ideals.sort();
    debug_assert!(ideals.iter().all(|i| is_ideal_of(ring, &ElementSet::full(ring.size()), i)));
    Ok(ideals)
}

/// Smallest additive subgroup containing the subgroup `base` and `extra`.
fn additive_span(ring: &RingTable, base: &ElementSet, extra: impl Iterator<Item = usize>) -> ElementSet {
    let mut span = base.clone();
    let mut elems = base.to_vec();
    for j in extra {
        if span.contains(j) {
            continue;
        }
        // H + <j> is the disjoint union of the cosets H + kj.
        let current = elems.clone();
        let mut shift = j;
        while !span.contains(shift) {
            for &x in &current {
                let y = ring.add(x, shift);
                span.insert(y);
                elems.push(y);
            }
            shift = ring.add(shift, j);
        }
    }
    span
}

/// Prime ideals of a finite commutative ring.
#[derive(Clone, Debug)]
pub struct SpecResult {
    ring: Arc<RingTable>,
    primes: Vec<ElementSet>,
    ideal_count: usize,
}

#[derive(Serialize)]
struct SpecJson<'a> {
    ring: &'a str,
    ideal_count: usize,
    primes: Vec<Vec<usize>>,
}

impl SpecResult {
    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn primes(&self) -> &[ElementSet] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn ideal_count(&self) -> usize {
        self.ideal_count
    }

    pub fn index_of(&self, p: &ElementSet) -> Option<usize> {
        self.primes.iter().position(|q| q == p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpecJson {
            ring: self.ring.label(),
            ideal_count: self.ideal_count,
            primes: self.primes.iter().map(ElementSet::to_vec).collect(),
        })
        .expect("serializable")
    }
}

/// The prime spectrum. Primality is tested with the general pairwise
/// condition; the finite-ring fact that every prime is maximal is asserted.
pub fn spec(ring: &Arc<RingTable>, budget: &Budget) -> Result<SpecResult> {
    let ideals = enumerate_ideals(ring, budget)?;
    let all = ElementSet::full(ring.size());
    let primes: Vec<ElementSet> = ideals
        .iter()
        .filter(|p| is_prime_ideal_of(ring, &all, p))
        .cloned()
        .collect();
    for p in &primes {
        let between = ideals
            .iter()
            .any(|j| j != p && j.len() < ring.size() && p.is_subset(j));
        assert!(!between, "prime {p:?} of finite ring {} is not maximal", ring.label());
    }
    Ok(SpecResult { ring: Arc::clone(ring), primes, ideal_count: ideals.len() })
}

/// `Spec(f)`: sends each prime `Q` of the codomain to `f⁻¹(Q)`, returned as
/// an index table from `codomain.primes()` into `domain.primes()`.
pub fn spec_map(f: &RingMap, domain: &SpecResult, codomain: &SpecResult) -> Result<Vec<usize>> {
    if !f.domain().is_commutative() || !f.codomain().is_commutative() {
        return Err(Error::NotCommutative("both sides of a Spec map".into()));
    }
    if **f.domain() != **domain.ring() || **f.codomain() != **codomain.ring() {
        return Err(Error::Definition("spectra do not match the map's rings".into()));
    }
    if let Some((cond, w)) = f.hom_violation() {
        return Err(Error::NotRingHom(format!("{cond} fails at {w:?}")));
    }
    codomain
        .primes()
        .iter()
        .map(|q| {
            domain
                .index_of(&f.preimage(q))
                .ok_or_else(|| Error::MissingPreimage(domain.ring().label().to_string()))
        })
        .collect()
}
