//! Finite unital rings as Cayley tables.

mod classify;
mod construct;
mod define;
mod map;
mod subring;
mod table;

pub use classify::{classify_elements, is_nilpotent, ElementClasses};
pub use construct::{
    make_gf, make_matrix_ring, make_product, make_triangular_ring, make_zmod, RingBuilder,
    DEFAULT_CAP,
};
pub use define::{parse_ring_definition, parse_ring_definition_with, RingDefinition};
pub use map::{lift_entrywise, matrix_map, matrix_map_with, scalar_field, RingMap};
pub use subring::{centralizer, closure, is_commutative_set, is_subring, Subring};
pub use table::{Coverage, RingTable, Shape, EXHAUSTIVE_AXIOM_LIMIT};

pub(crate) use construct::matmul;
pub(crate) use subring::closure_set;
