use std::sync::Arc;

use super::construct::RingBuilder;
use super::table::RingTable;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// A function between two finite rings, stored as an index table.
#[derive(Clone, Debug)]
pub struct RingMap {
    domain: Arc<RingTable>,
    codomain: Arc<RingTable>,
    table: Vec<usize>,
}

impl RingMap {
    pub fn new(domain: Arc<RingTable>, codomain: Arc<RingTable>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.size() {
            return Err(Error::LengthMismatch { expected: domain.size(), got: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= codomain.size()) {
            return Err(Error::ElementOutOfRange { index: bad, size: codomain.size() });
        }
        Ok(Self { domain, codomain, table })
    }

    pub fn identity(ring: &Arc<RingTable>) -> Self {
        Self {
            domain: Arc::clone(ring),
            codomain: Arc::clone(ring),
            table: ring.elements().collect(),
        }
    }

    /// Builds a map by evaluating `f` on every domain element.
    pub fn from_fn(
        domain: &Arc<RingTable>,
        codomain: &Arc<RingTable>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        Self::new(Arc::clone(domain), Arc::clone(codomain), domain.elements().map(f).collect())
    }

    pub fn domain(&self) -> &Arc<RingTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<RingTable> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// First violated homomorphism condition, with its witness pair.
    pub fn hom_violation(&self) -> Option<(&'static str, Vec<usize>)> {
        let (d, c) = (&*self.domain, &*self.codomain);
        if self.apply(d.zero()) != c.zero() {
            return Some(("zero", vec![d.zero()]));
        }
        if self.apply(d.one()) != c.one() {
            return Some(("one", vec![d.one()]));
        }
        for a in d.elements() {
            for b in d.elements() {
                if self.apply(d.add(a, b)) != c.add(self.apply(a), self.apply(b)) {
                    return Some(("addition", vec![a, b]));
                }
                if self.apply(d.mul(a, b)) != c.mul(self.apply(a), self.apply(b)) {
                    return Some(("multiplication", vec![a, b]));
                }
            }
        }
        None
    }

    pub fn is_ring_hom(&self) -> bool {
        self.hom_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = ElementSet::empty(self.codomain.size());
        self.table.iter().all(|&y| seen.insert(y))
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_injective()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap> {
        if *self.codomain != *next.domain {
            return Err(Error::Definition(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.domain.label(),
                self.codomain.label(),
                next.domain.label(),
                next.codomain.label()
            )));
        }
        Ok(RingMap {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&next.codomain),
            table: self.table.iter().map(|&y| next.apply(y)).collect(),
        })
    }

    /// `{x : f(x) ∈ target}`.
    pub fn preimage(&self, target: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.domain.size(),
            self.domain.elements().filter(|&x| target.contains(self.apply(x))),
        )
    }

    pub fn image(&self, source: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.codomain.size(), source.iter().map(|x| self.apply(x)))
    }
}

/// The field of scalars of an algebra and its embedding as scalar
/// elements: the base field of a matrix or triangular ring over a field, and
/// otherwise the prime field when the characteristic is prime.
pub fn scalar_field(ring: &Arc<RingTable>) -> Option<RingMap> {
    if let Some((base, n)) = ring.matrix_base() {
        if base.is_field() {
            let base = Arc::clone(base);
            return RingMap::from_fn(&base, ring, |x| {
                let mut entries = vec![base.zero(); n * n];
                for i in 0..n {
                    entries[i * n + i] = x;
                }
                ring.matrix_element(&entries).expect("diagonal entries are valid")
            })
            .ok();
        }
    }
    let p = ring.characteristic();
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return None;
    }
    let fp = Arc::new(RingBuilder::default().gf(p, 1).ok()?);
    RingMap::from_fn(&fp, ring, |x| ring.multiple(ring.one(), x)).ok()
}

/// Entrywise extension of a ring homomorphism to `n x n` matrices.
pub fn matrix_map(f: &RingMap, n: usize) -> Result<RingMap> {
    matrix_map_with(&RingBuilder::default(), f, n)
}

pub fn matrix_map_with(builder: &RingBuilder, f: &RingMap, n: usize) -> Result<RingMap> {
    if let Some((cond, w)) = f.hom_violation() {
        return Err(Error::NotRingHom(format!("{cond} fails at {w:?}")));
    }
    let src = Arc::new(builder.matrix(f.domain(), n)?);
    let dst = Arc::new(builder.matrix(f.codomain(), n)?);
    lift_entrywise(f, &src, &dst)
}

/// Applies `f` to every entry, given matrix rings already built over its
/// domain and codomain.
pub fn lift_entrywise(f: &RingMap, src: &Arc<RingTable>, dst: &Arc<RingTable>) -> Result<RingMap> {
    let table = src
        .elements()
        .map(|x| {
            let entries: Vec<usize> = src
                .matrix_entries(x)
                .ok_or_else(|| Error::Definition(format!("{} is not a matrix ring", src.label())))?
                .into_iter()
                .map(|e| f.apply(e))
                .collect();
            dst.matrix_element(&entries)
                .ok_or_else(|| Error::Definition(format!("{} is not a matrix ring", dst.label())))
        })
        .collect::<Result<Vec<_>>>()?;
    RingMap::new(Arc::clone(src), Arc::clone(dst), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::construct::{make_gf, make_matrix_ring, make_triangular_ring};

    fn f2() -> Arc<RingTable> {
        Arc::new(make_gf(2, 1).unwrap())
    }

    #[test]
    fn identity_is_hom() {
        let m = Arc::new(make_matrix_ring(&f2(), 2).unwrap());
        assert!(RingMap::identity(&m).is_ring_hom());
    }

    #[test]
    fn corner_entry_of_t2_is_hom() {
        let k = f2();
        let t2 = Arc::new(make_triangular_ring(&k, 2).unwrap());
        let corner = RingMap::from_fn(&t2, &k, |x| t2.matrix_entries(x).unwrap()[0]).unwrap();
        assert!(corner.is_ring_hom());
    }

    #[test]
    fn diagonal_product_is_not_hom() {
        let k = f2();
        let t2 = Arc::new(make_triangular_ring(&k, 2).unwrap());
        let det = RingMap::from_fn(&t2, &k, |x| {
            let e = t2.matrix_entries(x).unwrap();
            k.mul(e[0], e[3])
        })
        .unwrap();
        // multiplicative on all pairs, so the violation must be additive
        for a in t2.elements() {
            for b in t2.elements() {
                assert_eq!(det.apply(t2.mul(a, b)), k.mul(det.apply(a), det.apply(b)));
            }
        }
        let (cond, w) = det.hom_violation().unwrap();
        assert_eq!(cond, "addition");
        let _ = w;
        let commuting_failure = t2.elements().any(|a| {
            t2.elements().any(|b| {
                t2.commute(a, b) && det.apply(t2.add(a, b)) != k.add(det.apply(a), det.apply(b))
            })
        });
        assert!(commuting_failure);
    }

    #[test]
    fn trace_is_not_multiplicative() {
        let k = f2();
        let m = Arc::new(make_matrix_ring(&k, 2).unwrap());
        let tr = RingMap::from_fn(&m, &k, |x| {
            let e = m.matrix_entries(x).unwrap();
            k.add(e[0], e[3])
        })
        .unwrap();
        assert!(!tr.is_ring_hom());
    }

    #[test]
    fn matrix_map_of_f2_into_f4() {
        let k = f2();
        let f4 = Arc::new(make_gf(2, 2).unwrap());
        let inc = RingMap::from_fn(&k, &f4, |x| x).unwrap();
        assert!(inc.is_ring_hom());
        let lifted = matrix_map(&inc, 2).unwrap();
        assert_eq!(lifted.domain().size(), 16);
        assert_eq!(lifted.codomain().size(), 256);
        assert!(lifted.is_ring_hom());
        assert!(lifted.is_injective());
        let id = matrix_map(&RingMap::identity(&k), 2).unwrap();
        assert!(id.table().iter().enumerate().all(|(i, &v)| i == v));
    }

    #[test]
    fn matrix_map_rejects_non_hom() {
        let k = f2();
        let bad = RingMap::from_fn(&k, &k, |_| 0).unwrap();
        assert!(matches!(matrix_map(&bad, 2), Err(Error::NotRingHom(_))));
    }
}
