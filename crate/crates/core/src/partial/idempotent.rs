use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::finring::{classify_elements, scalar_field, RingTable};

/// The idempotents split as `{0, 1} ⊔ chosen ⊔ {1 - e : e ∈ chosen}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentPartition {
    pub trivial: Vec<usize>,
    /// One idempotent from each complementary pair: the smaller index.
    pub chosen: Vec<usize>,
    /// `(e, 1 - e)` for each chosen `e`.
    pub complement: Vec<(usize, usize)>,
    /// One representative (smallest index) per class of nonzero nilpotents
    /// under nonzero scalar multiples, when the ring is an algebra over a
    /// field.
    pub nilpotent_classes: Option<Vec<usize>>,
}

pub fn partition_idempotents(ring: &Arc<RingTable>) -> Result<IdempotentPartition> {
    let r = &**ring;
    let classes = classify_elements(r);
    let mut trivial = vec![r.zero(), r.one()];
    trivial.sort_unstable();
    trivial.dedup();
    let mut chosen = Vec::new();
    let mut complement = Vec::new();
    for e in classes.idempotents.iter() {
        if e == r.zero() || e == r.one() {
            continue;
        }
        let f = r.sub(r.one(), e);
        if f == e {
            return Err(Error::Inapplicable(format!("idempotent {e} equals its complement")));
        }
        if e < f {
            chosen.push(e);
            complement.push((e, f));
        }
    }
    let nilpotent_classes = scalar_field(ring).map(|scalars| {
        let k = scalars.domain();
        let mut covered = ElementSet::empty(r.size());
        let mut reps = Vec::new();
        for n in classes.nilpotents.iter() {
            if n == r.zero() || covered.contains(n) {
                continue;
            }
            reps.push(n);
            for lambda in k.elements().filter(|&l| l != k.zero()) {
                covered.insert(r.mul(scalars.apply(lambda), n));
            }
        }
        reps
    });
    Ok(IdempotentPartition { trivial, chosen, complement, nilpotent_classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gf, make_matrix_ring, make_product};

    #[test]
    fn field_has_no_chosen_idempotents() {
        let p = partition_idempotents(&Arc::new(make_gf(3, 2).unwrap())).unwrap();
        assert!(p.chosen.is_empty());
        assert_eq!(p.nilpotent_classes, Some(vec![]));
    }

    #[test]
    fn boolean_square_has_one_pair() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let p = partition_idempotents(&Arc::new(make_product(&f2, &f2).unwrap())).unwrap();
        assert_eq!(p.chosen.len(), 1);
        assert_eq!(p.complement, vec![(1, 2)]);
    }

    #[test]
    fn m2f2_has_three_pairs_and_three_nil_lines() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let m = Arc::new(make_matrix_ring(&f2, 2).unwrap());
        let p = partition_idempotents(&m).unwrap();
        assert_eq!(p.chosen.len(), 3);
        let all: ElementSet = ElementSet::from_indices(
            16,
            p.trivial.iter().copied().chain(p.complement.iter().flat_map(|&(a, b)| [a, b])),
        );
        assert_eq!(all, classify_elements(&m).idempotents);
        assert_eq!(p.nilpotent_classes.map(|v| v.len()), Some(3));
    }

    #[test]
    fn m2f3_nilpotent_lines() {
        let f3 = Arc::new(make_gf(3, 1).unwrap());
        let m = Arc::new(make_matrix_ring(&f3, 2).unwrap());
        let p = partition_idempotents(&m).unwrap();
        // 8 nonzero nilpotents in 4 lines through the origin
        assert_eq!(p.nilpotent_classes.map(|v| v.len()), Some(4));
        // idempotents of M2(F3): 0, 1, and 12 rank-one projections
        assert_eq!(p.chosen.len(), 6);
    }
}
