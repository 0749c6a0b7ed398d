//! Partial-ring structure on a finite ring: commeasurability, partial
//! ideals, prime partial ideals, partial morphisms to commutative rings, and
//! the correspondence between partial ideals and compatible families of
//! ideals over commutative subrings.

mod glue;
mod ideal;
mod idempotent;
mod morphism;
mod structure;

pub use glue::{
    check_nesting, check_pairwise, glue_family, incompatibility, restrict_family,
    restrict_to_maximal, Family,
};
pub use ideal::{
    is_ideal_of, is_partial_ideal, is_partial_ideal_by_subrings, is_prime_ideal_of,
    is_prime_partial_ideal, is_prime_partial_ideal_by_subrings, partial_ideal_violation,
    prime_violation, IdealViolation, PartialIdeal,
};
pub use idempotent::{partition_idempotents, IdempotentPartition};
pub use morphism::{
    is_partial_morphism, preimage, preimage_under_hom, MorphismViolation, PartialMorphism,
};
pub use structure::{AxiomOutcome, AxiomReport, PartialStructure};


/// The standard structure: `a ⊙ b` iff `ab = ba`.
pub fn standard_structure(ring: &std::sync::Arc<crate::finring::RingTable>) -> PartialStructure {
    PartialStructure::standard(ring)
}
