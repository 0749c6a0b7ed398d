use super::table::RingTable;
use crate::bitset::ElementSet;

/// Idempotents, nilpotents and units of a ring, each found by exhaustive
/// scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClasses {
    pub idempotents: ElementSet,
    pub nilpotents: ElementSet,
    pub units: ElementSet,
}

pub fn classify_elements(ring: &RingTable) -> ElementClasses {
    let n = ring.size();
    ElementClasses {
        idempotents: ElementSet::from_indices(n, ring.elements().filter(|&x| ring.mul(x, x) == x)),
        nilpotents: ElementSet::from_indices(n, ring.elements().filter(|&x| is_nilpotent(ring, x))),
        units: ElementSet::from_indices(n, ring.elements().filter(|&x| ring.inverse(x).is_some())),
    }
}

/// Repeated squaring: `x` is nilpotent iff `x^(2^j) = 0` once `2^j >= size`.
pub fn is_nilpotent(ring: &RingTable, x: usize) -> bool {
    let mut y = x;
    let mut exp = 1usize;
    loop {
        if y == ring.zero() {
            return true;
        }
        if exp >= ring.size() {
            return false;
        }
        y = ring.mul(y, y);
        exp *= 2;
    }
}
