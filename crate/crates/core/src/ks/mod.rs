//! Kochen–Specker machinery over `Z[√2]`: exact rays, orthogonal bases,
//! {0,1}-colorability and the lift to higher dimension.

mod io;
mod quadint;
mod ray;
mod solver;
mod system;

pub use io::{load_rays, parse_rays, save_rays, write_rays, LoadedRays};
pub use quadint::QuadInt;
pub use ray::{canonicalize, dot, Ray};
pub use solver::{coloring_violation, ks_colorable, BranchOrder, Coloring, ColoringResult};
pub use system::{extract_bases, generate_peres, lift_to_dimension, squared_profile, RaySystem};
