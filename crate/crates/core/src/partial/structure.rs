use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::finring::RingTable;

/// A commeasurability relation on the elements of a ring.
///
/// The standard structure relates commuting elements and is evaluated
/// directly from the multiplication table. Hand-built relations are stored
/// as a dense matrix and exist mainly to exercise the axiom checker.
#[derive(Clone, Debug)]
pub struct PartialStructure {
    ring: Arc<RingTable>,
    relation: Option<Vec<bool>>,
}

impl PartialStructure {
    pub fn standard(ring: &Arc<RingTable>) -> Self {
        Self { ring: Arc::clone(ring), relation: None }
    }

    /// A structure with an explicit row-major `size x size` relation matrix.
    pub fn from_relation(ring: &Arc<RingTable>, relation: Vec<bool>) -> Result<Self> {
        let cells = ring.size() * ring.size();
        if relation.len() != cells {
            return Err(Error::LengthMismatch { expected: cells, got: relation.len() });
        }
        Ok(Self { ring: Arc::clone(ring), relation: Some(relation) })
    }

    /// The relation matrix, materialized.
    pub fn relation_matrix(&self) -> Vec<bool> {
        let n = self.ring.size();
        (0..n * n).map(|i| self.commeasurable(i / n, i % n)).collect()
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn is_standard(&self) -> bool {
        self.relation.is_none()
    }

    #[inline]
    pub fn commeasurable(&self, a: usize, b: usize) -> bool {
        match &self.relation {
            None => self.ring.commute(a, b),
            Some(m) => m[a * self.ring.size() + b],
        }
    }

    /// Elements commeasurable with `a`.
    pub fn partners(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.ring.elements().filter(move |&b| self.commeasurable(a, b))
    }

    /// Runs every partial-algebra axiom and reports each one separately.
    pub fn check_axioms(&self, mode: ExecMode) -> AxiomReport {
        let r = &*self.ring;
        let n = r.size();
        let c = |a, b| self.commeasurable(a, b);
        let elems: Vec<usize> = r.elements().collect();
        let mut entries = Vec::new();

        let first = |pred: &(dyn Fn(usize) -> Option<Vec<usize>> + Sync)| -> Option<Vec<usize>> {
            exec::map_vec(mode, &elems, |&a| pred(a)).into_iter().flatten().next()
        };

        entries.push(AxiomOutcome::new("reflexivity", first(&|a| (!c(a, a)).then(|| vec![a]))));
        entries.push(AxiomOutcome::new(
            "symmetry",
            first(&|a| (0..n).find(|&b| c(a, b) != c(b, a)).map(|b| vec![a, b])),
        ));
        entries.push(AxiomOutcome::new(
            "(1) zero and one are commeasurable with everything",
            first(&|a| (!(c(a, r.zero()) && c(a, r.one()))).then(|| vec![a])),
        ));
        entries.push(AxiomOutcome::new(
            "(3.0) identities",
            first(&|a| {
                (r.add(a, r.zero()) != a || r.mul(a, r.one()) != a || r.mul(r.one(), a) != a)
                    .then(|| vec![a])
            }),
        ));
        entries.push(AxiomOutcome::new(
            "(3.1) commutativity when defined",
            first(&|a| {
                (0..n)
                    .find(|&b| c(a, b) && (r.add(a, b) != r.add(b, a) || r.mul(a, b) != r.mul(b, a)))
                    .map(|b| vec![a, b])
            }),
        ));
        entries.push(AxiomOutcome::new(
            "(3.4) negation",
            first(&|a| {
                let na = r.neg(a);
                if !c(a, na) {
                    return Some(vec![a, na]);
                }
                (0..n).find(|&x| c(a, x) && !c(na, x)).map(|x| vec![a, x])
            }),
        ));
        let char_ = r.characteristic();
        entries.push(AxiomOutcome::new(
            "(3.5) bilinearity over the prime subring",
            first(&|a| {
                (0..n).find_map(|b| {
                    if !c(a, b) {
                        return None;
                    }
                    (0..char_).find_map(|l| {
                        let la = r.multiple(a, l);
                        let lb = r.multiple(b, l);
                        let lab = r.multiple(r.mul(a, b), l);
                        (r.mul(la, b) != lab || r.mul(a, lb) != lab).then(|| vec![l, a, b])
                    })
                })
            }),
        ));

        // Pairwise commeasurable triples.
        let triple_check = |check: &(dyn Fn(usize, usize, usize) -> bool + Sync)| {
            first(&|a| {
                for b in 0..n {
                    if !c(a, b) {
                        continue;
                    }
                    for x in 0..n {
                        if c(a, x) && c(b, x) && !check(a, b, x) {
                            return Some(vec![a, b, x]);
                        }
                    }
                }
                None
            })
        };
        entries.push(AxiomOutcome::new(
            "(2) operations preserve commeasurability",
            triple_check(&|a, b, x| {
                c(r.add(a, b), x)
                    && c(r.mul(a, b), x)
                    && (0..char_).all(|l| c(r.multiple(a, l), b))
            }),
        ));
        entries.push(AxiomOutcome::new(
            "(3.2) associativity on commeasurable triples",
            triple_check(&|a, b, x| {
                r.add(r.add(a, b), x) == r.add(a, r.add(b, x))
                    && r.mul(r.mul(a, b), x) == r.mul(a, r.mul(b, x))
            }),
        ));
        entries.push(AxiomOutcome::new(
            "(3.3) distributivity on commeasurable triples",
            triple_check(&|a, b, x| r.mul(a, r.add(b, x)) == r.add(r.mul(a, b), r.mul(a, x))),
        ));
        AxiomReport { entries }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomOutcome {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

impl AxiomOutcome {
    fn new(axiom: &'static str, witness: Option<Vec<usize>>) -> Self {
        Self { axiom, passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.entries.iter().filter(|e| !e.passed)
    }
}
