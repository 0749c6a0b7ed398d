//! Prime spectra: `Spec` of finite commutative rings and the prime partial
//! spectrum of arbitrary finite rings, computed as the limit of `Spec` over
//! the maximal commutative subrings.

mod csp;
mod ideals;
mod morphisms;
mod partspec;

pub use csp::SearchStats;
pub use ideals::{enumerate_ideals, spec, spec_map, SpecResult};
pub use morphisms::{enumerate_partial_morphisms, ring_homs, MorphismSearch};
pub use partspec::{part_spec, part_spec_map, CompatibleFamily, PartSpecResult};
