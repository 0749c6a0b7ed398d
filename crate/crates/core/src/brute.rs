//! Exhaustive subset oracles for rings of at most `MAX_BRUTE_SIZE`
//! elements. These share nothing with the lattice and CSP code beyond the
//! ring tables, so they serve as independent cross-checks.

use std::collections::BTreeSet;

use crate::bitset::ElementSet;
use crate::commlattice::CommLattice;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::finring::{closure_set, is_commutative_set, is_subring, RingTable};
use crate::partial::{
    is_partial_ideal, is_partial_ideal_by_subrings, is_prime_partial_ideal_by_subrings, prime_violation, PartialStructure,
};

pub const MAX_BRUTE_SIZE: usize = 20;

fn subset_count(n: usize) -> Result<u64> {
    if n > MAX_BRUTE_SIZE {
        return Err(Error::CapExceeded { requested: 1u128 << n.min(127), cap: 1 << MAX_BRUTE_SIZE });
    }
    Ok(1u64 << n)
}

fn filter_subsets<F>(n: usize, mode: ExecMode, keep: F) -> Result<Vec<ElementSet>>
where
    F: Fn(&ElementSet) -> bool + Sync + Send,
{
    let total = subset_count(n)?;
    let masks = exec::filter_range(mode, total, |m| keep(&ElementSet::from_mask(n, m)));
    let mut out: Vec<ElementSet> = masks.into_iter().map(|m| ElementSet::from_mask(n, m)).collect();
    out.sort();
    Ok(out)
}

/// Every subset passing the pairwise partial-ideal definition.
pub fn partial_ideals(s: &PartialStructure, mode: ExecMode) -> Result<Vec<ElementSet>> {
    let zero = s.ring().zero();
    filter_subsets(s.ring().size(), mode, |set| set.contains(zero) && is_partial_ideal(s, set))
}

/// Every subset passing the pairwise prime-partial-ideal definition.
pub fn prime_partial_ideals(s: &PartialStructure, mode: ExecMode) -> Result<Vec<ElementSet>> {
    let ring = s.ring();
    let (zero, one) = (ring.zero(), ring.one());
    filter_subsets(ring.size(), mode, |set| {
        set.contains(zero)
            && !set.contains(one)
            && is_partial_ideal(s, set)
            && matches!(prime_violation(s, set), Ok(None))
    })
}

/// Every unital commutative subring, by scanning all subsets.
pub fn commutative_subrings(ring: &RingTable, mode: ExecMode) -> Result<Vec<ElementSet>> {
    let (zero, one) = (ring.zero(), ring.one());
    filter_subsets(ring.size(), mode, |set| {
        set.contains(zero) && set.contains(one) && is_subring(ring, set) && is_commutative_set(ring, set)
    })
}

/// Compares the pairwise definitions against the per-subring ones on every
/// subset. Returns the first disagreeing subset, if any.
pub fn definition_disagreement(lat: &CommLattice, mode: ExecMode) -> Result<Option<ElementSet>> {
    let s = PartialStructure::standard(lat.ring());
    let bad = filter_subsets(lat.ring().size(), mode, |set| {
        let pairwise = is_partial_ideal(&s, set) && !set.is_empty();
        if pairwise != is_partial_ideal_by_subrings(lat, set) {
            return true;
        }
        pairwise && matches!(prime_violation(&s, set), Ok(None)) != is_prime_partial_ideal_by_subrings(lat, set)
    })?;
    Ok(bad.into_iter().next())
}

/// Completeness oracle for a lattice: closures of commuting pairs and
/// pairwise intersections must be listed, and on small rings the list must
/// match the exhaustive subset scan exactly.
pub fn check_completeness(lat: &CommLattice, mode: ExecMode) -> Result<()> {
    let ring = lat.ring();
    let listed: BTreeSet<&ElementSet> = lat.subrings().iter().map(|c| c.members()).collect();
    let missing = |set: ElementSet| Error::Definition(format!("commutative subring {:?} missing from lattice", set.to_vec()));
    let n = ring.size();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let closures = exec::map_vec(mode, &pairs, |&(a, b)| {
        (ring.commute(a, b)).then(|| closure_set(ring, [a, b])).filter(|c| !listed.contains(c))
    });
    if let Some(c) = closures.into_iter().flatten().next() {
        return Err(missing(c));
    }
    for (i, c) in lat.subrings().iter().enumerate() {
        for d in &lat.subrings()[i + 1..] {
            let meet = c.members().intersection(d.members());
            if !listed.contains(&meet) {
                return Err(missing(meet));
            }
        }
    }
    if n <= MAX_BRUTE_SIZE {
        let all = commutative_subrings(ring, mode)?;
        if all.len() != listed.len() {
            if let Some(c) = all.into_iter().find(|c| !listed.contains(c)) {
                return Err(missing(c));
            }
            return Err(Error::Definition("lattice lists a non-subring".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::commlattice::enumerate_commutative_subrings;
    use crate::exec::Budget;
    use crate::finring::{make_gf, make_matrix_ring, make_zmod};

    #[test]
    fn fields_have_two_partial_ideals() {
        for f in [make_zmod(2).unwrap(), make_gf(2, 2).unwrap(), make_zmod(5).unwrap()] {
            let f = Arc::new(f);
            let s = PartialStructure::standard(&f);
            let ideals = partial_ideals(&s, ExecMode::default()).unwrap();
            assert_eq!(ideals.len(), 2);
            assert_eq!(ideals[0].to_vec(), vec![f.zero()]);
            assert_eq!(ideals[1].len(), f.size());
        }
    }

    #[test]
    fn m2_f2_oracles() {
        let r = Arc::new(make_matrix_ring(&Arc::new(make_zmod(2).unwrap()), 2).unwrap());
        let lat = enumerate_commutative_subrings(&r, &Budget::unlimited(), ExecMode::default()).unwrap();
        check_completeness(&lat, ExecMode::default()).unwrap();
        let s = PartialStructure::standard(&r);
        assert_eq!(prime_partial_ideals(&s, ExecMode::Parallel).unwrap().len(), 8);
        assert_eq!(definition_disagreement(&lat, ExecMode::default()).unwrap(), None);
    }

    #[test]
    fn too_large_is_refused() {
        let r = Arc::new(make_zmod(32).unwrap());
        assert!(matches!(
            partial_ideals(&PartialStructure::standard(&r), ExecMode::Sequential),
            Err(Error::CapExceeded { .. })
        ));
    }
}
