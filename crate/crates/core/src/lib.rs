//! Tools for affine systems `(R, B, L, K)` in n-dimensional space: exact
//! verification of Hadamard, symmetry and selfadjointness conditions,
//! construction of dual systems and invariant lattices, numerical evaluation
//! of the associated self-similar measure's Fourier transform with certified
//! truncation bounds, enumeration and orthogonality testing of candidate
//! spectra, and desk-scale verification of the dual pair of Cuntz relations.
//!
//! All structural predicates are decided in exact rational arithmetic; only
//! transform values (and eigenvalue moduli) are floating point, and those
//! carry explicit error bounds.

pub mod catalog;
pub mod cuntz;
pub mod cyclo;
pub mod error;
pub mod hadamard;
pub mod io;
pub mod ratio;
pub mod ratlat;
pub mod spectrum;
pub mod system;
pub mod transform;

pub use error::{Error, Result};
pub use ratio::Rational;
pub use ratlat::{Lattice, RatMatrix, RatVector};
pub use system::AffineSystem;
