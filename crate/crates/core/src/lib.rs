//! Lattice-theoretic deciders for the positivity of line bundle classes on
//! K3 and Enriques surfaces.
//!
//! The input is purely numerical: an integer Gram matrix for the divisor
//! class lattice, a reference class `h` inside the ample chamber, and the
//! classes to test. The crate answers whether a big and nef class is
//! k-very ample, k-spanned or birationally k-very ample, computes the
//! Clifford index and minimal gonality of the smooth curves in the linear
//! system, and certifies every negative verdict with an explicit violating
//! class.
//!
//! All arithmetic is exact over arbitrary-precision integers and rationals.
//! Every operation is a pure function of immutable inputs and may be called
//! concurrently; the cached data inside [`Lattice`] is computed at
//! construction and never mutated.
//!
//! Whether an abstract lattice satisfying the validation rules is realized
//! by an actual surface is outside the scope of this crate: the deciders
//! work with the numerical data they are given.

// index loops are the clear form for the in-place symmetric row/column
// operations this crate is made of
#![allow(clippy::needless_range_loop)]

pub mod enriques;
pub mod enumerate;
pub mod k3;
pub mod lattice;
pub mod surface;

pub use enumerate::{classes_with_degree_and_square, definite_enumerate, EnumError};
pub use k3::{
    clifford_index, detect_exceptional, find_violator, is_ample, is_birationally_k_spanned,
    is_birationally_k_very_ample, is_k_spanned, is_k_very_ample, is_nef, is_spanned, min_gonality,
    Clause, CliffordReport, CriteriaError, Verdict, ViolatorMode, WitnessCertificate, WitnessKind,
};
pub use lattice::{DivisorClass, Lattice, LatticeError, Signature};
pub use surface::{
    enriques_basis_labels, enriques_gram, enriques_lattice, Effectivity, PolarizedSurface,
    SliceQuery, SurfaceKind, ValidationError,
};
