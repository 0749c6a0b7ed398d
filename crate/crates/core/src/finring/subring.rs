use super::table::{RingTable, Shape};
use crate::bitset::ElementSet;
use crate::error::Result;

/// A unital subring, given by its member set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subring {
    members: ElementSet,
    commutative: bool,
}

impl Subring {
    /// Wraps a member set that is already known to be a unital subring.
    /// Commutativity is recomputed.
    pub fn from_closed(ring: &RingTable, members: ElementSet) -> Self {
        debug_assert!(is_subring(ring, &members));
        let commutative = is_commutative_set(ring, &members);
        Self { members, commutative }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// The subring as a standalone ring. Element `i` of the result is the
    /// `i`-th smallest ambient index, returned alongside as the embedding.
    pub fn to_ring(&self, ambient: &RingTable, label: impl Into<String>) -> Result<(RingTable, Vec<usize>)> {
        let embedding = self.members.to_vec();
        let mut index = vec![usize::MAX; ambient.size()];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = i;
        }
        let n = embedding.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &x in &embedding {
            for &y in &embedding {
                add.push(index[ambient.add(x, y)] as u32);
                mul.push(index[ambient.mul(x, y)] as u32);
            }
        }
        let ring = RingTable::from_tables(
            label,
            n,
            add,
            mul,
            index[ambient.zero()],
            index[ambient.one()],
            Shape::Extracted { embedding: embedding.clone() },
        )?;
        Ok((ring, embedding))
    }
}

/// Smallest unital subring containing `gens`.
pub fn closure(ring: &RingTable, gens: &ElementSet) -> Subring {
    let members = closure_set(ring, gens.iter());
    Subring::from_closed(ring, members)
}

/// Member set of the subring generated by `gens`. Every pair of members is
/// combined exactly once (both multiplication orders), so the result is
/// closed under addition, negation and multiplication.
pub(crate) fn closure_set(ring: &RingTable, gens: impl IntoIterator<Item = usize>) -> ElementSet {
    let mut seen = ElementSet::empty(ring.size());
    let mut elems = Vec::new();
    let push = |x: usize, seen: &mut ElementSet, elems: &mut Vec<usize>| {
        if seen.insert(x) {
            elems.push(x);
        }
    };
    push(ring.zero(), &mut seen, &mut elems);
    push(ring.one(), &mut seen, &mut elems);
    for g in gens {
        push(g, &mut seen, &mut elems);
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        push(ring.neg(x), &mut seen, &mut elems);
        for j in 0..=i {
            let y = elems[j];
            push(ring.add(x, y), &mut seen, &mut elems);
            push(ring.mul(x, y), &mut seen, &mut elems);
            push(ring.mul(y, x), &mut seen, &mut elems);
        }
        i += 1;
    }
    seen
}

/// `{x : xa = ax for all a in s}`.
pub fn centralizer(ring: &RingTable, s: &ElementSet) -> Subring {
    let gens: Vec<usize> = s.iter().collect();
    let members = ElementSet::from_indices(
        ring.size(),
        ring.elements().filter(|&x| gens.iter().all(|&a| ring.commute(x, a))),
    );
    Subring::from_closed(ring, members)
}

pub fn is_subring(ring: &RingTable, s: &ElementSet) -> bool {
    if !s.contains(ring.zero()) || !s.contains(ring.one()) {
        return false;
    }
    let elems = s.to_vec();
    elems.iter().all(|&x| s.contains(ring.neg(x)))
        && elems.iter().all(|&x| {
            elems
                .iter()
                .all(|&y| s.contains(ring.add(x, y)) && s.contains(ring.mul(x, y)))
        })
}

pub fn is_commutative_set(ring: &RingTable, s: &ElementSet) -> bool {
    let elems = s.to_vec();
    elems
        .iter()
        .enumerate()
        .all(|(i, &x)| elems[i + 1..].iter().all(|&y| ring.commute(x, y)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finring::construct::{make_gf, make_matrix_ring};

    fn m2f2() -> RingTable {
        make_matrix_ring(&Arc::new(make_gf(2, 1).unwrap()), 2).unwrap()
    }

    #[test]
    fn empty_generators_give_prime_subring() {
        let m = m2f2();
        let s = closure(&m, &ElementSet::empty(16));
        assert_eq!(s.len(), 2);
        assert!(s.is_commutative());
    }

    #[test]
    fn rank_one_idempotent_generates_four_elements() {
        let m = m2f2();
        let e = m.matrix_element(&[1, 0, 0, 0]).unwrap();
        let s = closure(&m, &ElementSet::from_indices(16, [e]));
        let one_plus_e = m.add(m.one(), e);
        assert_eq!(s.members().to_vec().len(), 4);
        for x in [m.zero(), m.one(), e, one_plus_e] {
            assert!(s.contains(x));
        }
        assert!(s.is_commutative());
    }

    #[test]
    fn elementary_pair_generates_everything() {
        let m = m2f2();
        let e12 = m.matrix_element(&[0, 1, 0, 0]).unwrap();
        let e21 = m.matrix_element(&[0, 0, 1, 0]).unwrap();
        let s = closure(&m, &ElementSet::from_indices(16, [e12, e21]));
        assert_eq!(s.len(), 16);
        assert!(!s.is_commutative());
    }

    #[test]
    fn centralizer_examples() {
        let m = m2f2();
        assert_eq!(centralizer(&m, &ElementSet::from_indices(16, [m.one()])).len(), 16);
        let center = centralizer(&m, &ElementSet::full(16));
        assert_eq!(center.members().to_vec(), vec![m.zero(), m.one()]);
        let diag: Vec<usize> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|d| m.matrix_element(&[d[0], 0, 0, d[1]]).unwrap())
            .collect();
        let diag_set = ElementSet::from_indices(16, diag);
        assert_eq!(centralizer(&m, &diag_set).members(), &diag_set);
    }

    #[test]
    fn extracted_subring_is_a_ring() {
        let m = m2f2();
        let e = m.matrix_element(&[1, 0, 0, 0]).unwrap();
        let s = closure(&m, &ElementSet::from_indices(16, [e]));
        let (r, emb) = s.to_ring(&m, "k[e]").unwrap();
        assert_eq!(r.size(), 4);
        assert!(r.is_commutative());
        assert_eq!(emb[r.one()], m.one());
        assert_eq!(emb[r.zero()], m.zero());
    }
}
