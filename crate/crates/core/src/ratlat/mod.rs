//! Exact rational linear algebra and lattice arithmetic.

pub mod hnf;
mod lattice;
mod matrix;
mod vector;

pub use lattice::{
    coset_reps, in_lat, minimal_invariant_lattice, points_in_box, sublattices_of_index,
    superlattices_between, superlattices_up_to_index, Lattice,
};
pub use matrix::RatMatrix;
pub use vector::RatVector;
