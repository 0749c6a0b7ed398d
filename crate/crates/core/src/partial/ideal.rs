use serde::Serialize;

use super::structure::PartialStructure;
use crate::bitset::ElementSet;
use crate::commlattice::CommLattice;
use crate::error::{Error, Result};
use crate::finring::RingTable;

/// Why a subset fails to be a (prime) partial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdealViolation {
    /// The empty set is excluded: an ideal meets every subring in at least 0.
    Empty,
    /// `a ⊙ b` and `a, b ∈ I` but `a + b ∉ I`.
    Sum { a: usize, b: usize },
    /// `a ⊙ b` and `b ∈ I` but `ab ∉ I`.
    Product { a: usize, b: usize },
    /// The set contains 1, so it is all of R.
    Improper,
    /// `x ⊙ y`, `xy ∈ P`, but neither factor is in `P`.
    NotPrime { x: usize, y: usize },
}

/// A subset verified to be a partial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialIdeal {
    members: ElementSet,
}

impl PartialIdeal {
    pub fn new(structure: &PartialStructure, members: ElementSet) -> Result<Self> {
        match partial_ideal_violation(structure, &members) {
            None => Ok(Self { members }),
            Some(v) => Err(Error::NotPartialIdeal(format!("{v:?}"))),
        }
    }

    pub(crate) fn new_unchecked(members: ElementSet) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn into_members(self) -> ElementSet {
        self.members
    }
}

/// Checks the two closure conditions on all commeasurable pairs.
pub fn partial_ideal_violation(s: &PartialStructure, members: &ElementSet) -> Option<IdealViolation> {
    let r = s.ring();
    if members.universe() != r.size() {
        return Some(IdealViolation::Empty);
    }
    if members.is_empty() {
        return Some(IdealViolation::Empty);
    }
    for b in members.iter() {
        for a in s.partners(b) {
            if !members.contains(r.mul(a, b)) {
                return Some(IdealViolation::Product { a, b });
            }
            if members.contains(a) && !members.contains(r.add(a, b)) {
                return Some(IdealViolation::Sum { a, b });
            }
        }
    }
    None
}

pub fn is_partial_ideal(s: &PartialStructure, members: &ElementSet) -> bool {
    partial_ideal_violation(s, members).is_none()
}

/// Properness and primality on commeasurable pairs. Fails with an error if
/// `members` is not a partial ideal in the first place.
pub fn prime_violation(s: &PartialStructure, members: &ElementSet) -> Result<Option<IdealViolation>> {
    if let Some(v) = partial_ideal_violation(s, members) {
        return Err(Error::NotPartialIdeal(format!("{v:?}")));
    }
    Ok(prime_violation_of_ideal(s, members))
}

pub(crate) fn prime_violation_of_ideal(s: &PartialStructure, members: &ElementSet) -> Option<IdealViolation> {
    let r = s.ring();
    if members.contains(r.one()) {
        return Some(IdealViolation::Improper);
    }
    let outside: Vec<usize> = r.elements().filter(|&x| !members.contains(x)).collect();
    for (i, &x) in outside.iter().enumerate() {
        for &y in &outside[i..] {
            if s.commeasurable(x, y) && (members.contains(r.mul(x, y)) || members.contains(r.mul(y, x))) {
                return Some(IdealViolation::NotPrime { x, y });
            }
        }
    }
    None
}

pub fn is_prime_partial_ideal(s: &PartialStructure, members: &ElementSet) -> Result<bool> {
    Ok(prime_violation(s, members)?.is_none())
}

/// Whether `j` is an ideal of the commutative subring `c`: a nonempty
/// additive subgroup of `c` absorbing multiplication by `c`.
pub fn is_ideal_of(ring: &RingTable, c: &ElementSet, j: &ElementSet) -> bool {
    if j.is_empty() || !j.is_subset(c) {
        return false;
    }
    let elems: Vec<usize> = j.iter().collect();
    elems.iter().all(|&a| {
        elems.iter().all(|&b| j.contains(ring.add(a, b)))
            && c.iter().all(|x| j.contains(ring.mul(x, a)) && j.contains(ring.mul(a, x)))
    })
}

/// Whether `p` is a prime ideal of the commutative subring `c`.
pub fn is_prime_ideal_of(ring: &RingTable, c: &ElementSet, p: &ElementSet) -> bool {
    if !is_ideal_of(ring, c, p) || p.contains(ring.one()) {
        return false;
    }
    let outside: Vec<usize> = c.difference(p).iter().collect();
    outside
        .iter()
        .all(|&x| outside.iter().all(|&y| !p.contains(ring.mul(x, y))))
}

/// The per-subring form of the definition: `I ∩ C` is an ideal of `C` for
/// every commutative subring `C` in the lattice.
pub fn is_partial_ideal_by_subrings(lat: &CommLattice, members: &ElementSet) -> bool {
    let r = lat.ring();
    lat.subrings()
        .iter()
        .all(|c| is_ideal_of(r, c.members(), &members.intersection(c.members())))
}

/// The per-subring form of primality: `P ≠ R` and `P ∩ C` is a prime ideal
/// of every commutative subring `C`.
pub fn is_prime_partial_ideal_by_subrings(lat: &CommLattice, members: &ElementSet) -> bool {
    let r = lat.ring();
    members.len() < r.size()
        && lat
            .subrings()
            .iter()
            .all(|c| is_prime_ideal_of(r, c.members(), &members.intersection(c.members())))
}
