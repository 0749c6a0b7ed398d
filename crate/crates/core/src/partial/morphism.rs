use std::sync::Arc;

use serde::Serialize;

use super::ideal::partial_ideal_violation;
use super::structure::PartialStructure;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::finring::{RingMap, RingTable};

/// A function from a ring (with its standard partial structure) to a
/// commutative ring, stored as a value table.
///
/// Compatibility with the prime-subring scalar action follows from
/// additivity on commeasurable pairs, so it is not checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMorphism {
    source: Arc<RingTable>,
    target: Arc<RingTable>,
    table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismViolation {
    pub condition: &'static str,
    pub witness: Vec<usize>,
}

impl PartialMorphism {
    /// Wraps a candidate table. Only the shape is validated; use
    /// [`PartialMorphism::violation`] for the morphism conditions.
    pub fn candidate(source: &Arc<RingTable>, target: &Arc<RingTable>, table: Vec<usize>) -> Result<Self> {
        if !target.is_commutative() {
            return Err(Error::NotCommutative(format!("morphism target {}", target.label())));
        }
        if table.len() != source.size() {
            return Err(Error::LengthMismatch { expected: source.size(), got: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= target.size()) {
            return Err(Error::ElementOutOfRange { index: bad, size: target.size() });
        }
        Ok(Self { source: Arc::clone(source), target: Arc::clone(target), table })
    }

    /// A verified partial morphism.
    pub fn new(source: &Arc<RingTable>, target: &Arc<RingTable>, table: Vec<usize>) -> Result<Self> {
        let f = Self::candidate(source, target, table)?;
        match f.violation() {
            None => Ok(f),
            Some(v) => Err(Error::NotPartialMorphism(format!("{} fails at {:?}", v.condition, v.witness))),
        }
    }

    pub fn from_ring_map(f: &RingMap) -> Result<Self> {
        Self::candidate(f.domain(), f.codomain(), f.table().to_vec())
    }

    pub fn source(&self) -> &Arc<RingTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingTable> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// First failing morphism condition on a commuting pair.
    pub fn violation(&self) -> Option<MorphismViolation> {
        let (r, k) = (&*self.source, &*self.target);
        let v = |condition, witness| Some(MorphismViolation { condition, witness });
        if self.apply(r.zero()) != k.zero() {
            return v("f(0) = 0", vec![r.zero()]);
        }
        if self.apply(r.one()) != k.one() {
            return v("f(1) = 1", vec![r.one()]);
        }
        for a in r.elements() {
            for b in a..r.size() {
                if !r.commute(a, b) {
                    continue;
                }
                if self.apply(r.add(a, b)) != k.add(self.apply(a), self.apply(b)) {
                    return v("f(a + b) = f(a) + f(b)", vec![a, b]);
                }
                if self.apply(r.mul(a, b)) != k.mul(self.apply(a), self.apply(b)) {
                    return v("f(ab) = f(a) f(b)", vec![a, b]);
                }
            }
        }
        None
    }

    /// `f⁻¹(0)`.
    pub fn kernel(&self) -> ElementSet {
        let zero = ElementSet::from_indices(self.target.size(), [self.target.zero()]);
        self.pullback(&zero)
    }

    fn pullback(&self, target: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.source.size(),
            self.source.elements().filter(|&x| target.contains(self.apply(x))),
        )
    }
}

pub fn is_partial_morphism(f: &PartialMorphism) -> bool {
    f.violation().is_none()
}

/// `f⁻¹(I)` for a partial morphism `f` and a partial ideal `I` of its target.
pub fn preimage(f: &PartialMorphism, ideal: &ElementSet) -> Result<ElementSet> {
    if let Some(v) = f.violation() {
        return Err(Error::NotPartialMorphism(format!("{} fails at {:?}", v.condition, v.witness)));
    }
    let target = PartialStructure::standard(f.target());
    if let Some(v) = partial_ideal_violation(&target, ideal) {
        return Err(Error::NotPartialIdeal(format!("{v:?}")));
    }
    Ok(f.pullback(ideal))
}

/// `f⁻¹(I)` for a ring homomorphism with arbitrary codomain, where `I` is a
/// partial ideal of the codomain.
pub fn preimage_under_hom(f: &RingMap, ideal: &ElementSet) -> Result<ElementSet> {
    if let Some((cond, w)) = f.hom_violation() {
        return Err(Error::NotRingHom(format!("{cond} fails at {w:?}")));
    }
    let target = PartialStructure::standard(f.codomain());
    if let Some(v) = partial_ideal_violation(&target, ideal) {
        return Err(Error::NotPartialIdeal(format!("{v:?}")));
    }
    Ok(f.preimage(ideal))
}
