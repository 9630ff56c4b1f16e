//! Exact computations on discriminantal (Manin–Schechtman) arrangements.
//!
//! The crate builds the discriminantal arrangement of a generic hyperplane
//! arrangement, counts its cones through characteristic polynomials, decides
//! very-genericity with the Dilworth matroid `D(U_{k,n})`, enumerates the
//! lattice `P(n,k)` together with concurrency-closed collections, and compares
//! simplex cells of the primal arrangement with facets of the cone containing
//! its constant vector. All arithmetic is exact over the rationals.

pub mod arrangement;
pub mod charpoly;
pub mod conegeom;
pub mod discriminantal;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod lattice;
pub mod matroid;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{RatMatrix, Rational};
pub use subset::{SubsetFamily, SubsetIndex};
