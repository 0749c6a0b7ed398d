//! Partial ideals as families of ideals over commutative subrings.

use std::collections::BTreeMap;

use super::ideal::{is_ideal_of, partial_ideal_violation, PartialIdeal};
use super::structure::PartialStructure;
use crate::bitset::ElementSet;
use crate::commlattice::CommLattice;
use crate::error::{Error, Result};

/// Ideals indexed by lattice position.
pub type Family = BTreeMap<usize, ElementSet>;

/// First element witnessing `I(C₁) ∩ C₂ ≠ C₁ ∩ I(C₂)`, if any.
pub fn incompatibility(lat: &CommLattice, i: usize, ideal_i: &ElementSet, j: usize, ideal_j: &ElementSet) -> Option<usize> {
    let left = ideal_i.intersection(lat.subring(j).members());
    let right = ideal_j.intersection(lat.subring(i).members());
    left.difference(&right).union(&right.difference(&left)).iter().next()
}

/// Glues ideals of the maximal commutative subrings into a partial ideal.
///
/// `assignments` must cover exactly the maximal subrings, each value must be
/// an ideal of its subring, and every pair must agree on the overlap.
pub fn glue_family(lat: &CommLattice, assignments: &Family) -> Result<PartialIdeal> {
    let keys: Vec<usize> = assignments.keys().copied().collect();
    if keys != lat.maximal() {
        return Err(Error::Definition(format!(
            "assignment keys {keys:?} differ from the maximal subrings {:?}",
            lat.maximal()
        )));
    }
    let ring = lat.ring();
    for (&c, ideal) in assignments {
        if !is_ideal_of(ring, lat.subring(c).members(), ideal) {
            return Err(Error::NotAnIdeal { subring: c });
        }
    }
    check_pairwise(lat, assignments)?;
    let mut union = ElementSet::empty(ring.size());
    for ideal in assignments.values() {
        union.union_with(ideal);
    }
    let structure = PartialStructure::standard(ring);
    if let Some(v) = partial_ideal_violation(&structure, &union) {
        return Err(Error::NotPartialIdeal(format!("glued set: {v:?}")));
    }
    Ok(PartialIdeal::new_unchecked(union))
}

/// Form (2) of the determining data: pairwise agreement on overlaps.
pub fn check_pairwise(lat: &CommLattice, family: &Family) -> Result<()> {
    let entries: Vec<(&usize, &ElementSet)> = family.iter().collect();
    for (a, &(&i, ii)) in entries.iter().enumerate() {
        for &(&j, ij) in &entries[a + 1..] {
            if let Some(element) = incompatibility(lat, i, ii, j, ij) {
                return Err(Error::Incompatible { first: i, second: j, element });
            }
        }
    }
    Ok(())
}

/// Form (1) of the determining data: `I(C) = I(C') ∩ C` whenever `C ⊆ C'`.
pub fn check_nesting(lat: &CommLattice, family: &Family) -> Result<()> {
    for (&i, ii) in family {
        for (&j, ij) in family {
            if i != j && lat.includes(i, j) {
                let restricted = ij.intersection(lat.subring(i).members());
                if let Some(element) = restricted.difference(ii).union(&ii.difference(&restricted)).iter().next() {
                    return Err(Error::Incompatible { first: i, second: j, element });
                }
            }
        }
    }
    Ok(())
}

/// `C ↦ I ∩ C` over every subring in the lattice, with each intersection
/// checked to be an ideal and the nesting condition verified.
pub fn restrict_family(lat: &CommLattice, ideal: &ElementSet) -> Result<Family> {
    let ring = lat.ring();
    let mut family = Family::new();
    for (i, c) in lat.subrings().iter().enumerate() {
        let part = ideal.intersection(c.members());
        if !is_ideal_of(ring, c.members(), &part) {
            return Err(Error::NotAnIdeal { subring: i });
        }
        family.insert(i, part);
    }
    check_nesting(lat, &family)?;
    Ok(family)
}

/// The restriction of `ideal` to the maximal subrings only: the input shape
/// of [`glue_family`].
pub fn restrict_to_maximal(lat: &CommLattice, ideal: &ElementSet) -> Result<Family> {
    let full = restrict_family(lat, ideal)?;
    Ok(lat.maximal().iter().map(|&i| (i, full[&i].clone())).collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::commlattice::enumerate_commutative_subrings;
    use crate::exec::{Budget, ExecMode};
    use crate::finring::{classify_elements, make_gf, make_matrix_ring, make_zmod, RingTable};

    fn lattice(r: RingTable) -> CommLattice {
        enumerate_commutative_subrings(&Arc::new(r), &Budget::unlimited(), ExecMode::Sequential).unwrap()
    }

    #[test]
    fn commutative_ring_glues_to_itself() {
        let lat = lattice(make_zmod(12).unwrap());
        let j = ElementSet::from_indices(12, [0, 4, 8]);
        let fam: Family = [(lat.maximal()[0], j.clone())].into();
        assert_eq!(glue_family(&lat, &fam).unwrap().members(), &j);
    }

    #[test]
    fn nilradicals_glue_to_global_nilpotents() {
        let lat = lattice(make_matrix_ring(&Arc::new(make_gf(2, 1).unwrap()), 2).unwrap());
        let ring = lat.ring();
        let fam: Family = lat
            .maximal()
            .iter()
            .map(|&i| {
                let c = lat.subring(i).members();
                let nil = ElementSet::from_indices(
                    ring.size(),
                    c.iter().filter(|&x| crate::finring::is_nilpotent(ring, x)),
                );
                (i, nil)
            })
            .collect();
        let glued = glue_family(&lat, &fam).unwrap();
        assert_eq!(glued.members(), &classify_elements(ring).nilpotents);
        assert_eq!(restrict_to_maximal(&lat, glued.members()).unwrap(), fam);
    }

    #[test]
    fn restriction_of_nilpotents() {
        let lat = lattice(make_matrix_ring(&Arc::new(make_gf(2, 1).unwrap()), 2).unwrap());
        let ring = lat.ring();
        let nil = classify_elements(ring).nilpotents;
        let fam = restrict_family(&lat, &nil).unwrap();
        for (i, part) in &fam {
            let c = lat.subring(*i);
            let has_nonzero_nilpotent = c.members().iter().any(|x| x != ring.zero() && nil.contains(x));
            if has_nonzero_nilpotent {
                assert_eq!(part.len(), 2);
            } else {
                assert_eq!(part.to_vec(), vec![ring.zero()]);
            }
        }
    }

    #[test]
    fn incompatible_assignment_names_the_pair() {
        let lat = lattice(make_matrix_ring(&Arc::new(make_gf(2, 1).unwrap()), 2).unwrap());
        let ring = lat.ring();
        let zero = ElementSet::from_indices(ring.size(), [ring.zero()]);
        let mut fam: Family = lat.maximal().iter().map(|&i| (i, zero.clone())).collect();
        // the whole subring is an ideal, but it disagrees on the shared scalars
        let first = lat.maximal()[0];
        fam.insert(first, lat.subring(first).members().clone());
        match glue_family(&lat, &fam) {
            Err(Error::Incompatible { first: a, element, .. }) => {
                assert_eq!(a, first);
                assert_eq!(element, ring.one());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn restriction_of_zero_is_zero_everywhere() {
        let lat = lattice(make_matrix_ring(&Arc::new(make_gf(2, 1).unwrap()), 2).unwrap());
        let zero = ElementSet::from_indices(16, [lat.ring().zero()]);
        for part in restrict_family(&lat, &zero).unwrap().values() {
            assert_eq!(part, &zero);
        }
    }
}
