//! Exact computations with prime partial ideals of finite rings.
//!
//! The crate works with small finite unital rings stored as Cayley tables and
//! provides:
//!
//! * [`finring`]: ring construction (`Z/m`, `GF(p^k)`, matrix, triangular and
//!   product rings), subring closure, centralizers and ring maps;
//! * [`commlattice`]: the poset of unital commutative subrings, its maximal
//!   elements and an on-disk cache;
//! * [`partial`]: commeasurability structures, partial ideals, prime partial
//!   ideals, partial morphisms and the gluing/restriction correspondence;
//! * [`primespec`]: `Spec` of finite commutative rings and the prime partial
//!   spectrum computed as a compatible-family constraint search;
//! * [`ks`]: exact `Z[sqrt 2]` ray systems and a {0,1}-coloring solver for
//!   Kochen-Specker configurations;
//! * [`obstruction`]: the permutation-matrix (Morita) computations, the
//!   eigenvalue check and the assembled verification report.
//!
//! Data-parallel inner loops run on rayon when the `parallel` feature is
//! enabled (the default). Every parallel entry point takes an [`ExecMode`] so
//! that the sequential path stays available and comparable.

pub mod bitset;
pub mod brute;
pub mod commlattice;
pub mod error;
pub mod exec;
pub mod finring;
pub mod ks;
pub mod obstruction;
pub mod partial;
pub mod primespec;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use exec::{Budget, ExecMode};
pub use finring::{RingMap, RingTable, Subring};
