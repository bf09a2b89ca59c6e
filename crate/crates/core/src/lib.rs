//! Computable pieces of a Lorentzian almost-commutative geometry built from
//! Minkowski space and a finite spectral triple.
//!
//! * [`clifford`]: gamma matrices, the fundamental symmetry and the Krein
//!   product.
//! * [`finite_triple`]: the two-point and electroweak internal triples and
//!   their axiom checks.
//! * [`distance`]: the spectral distance on commutative finite triples with
//!   a brute-force grid oracle.
//! * [`causality`]: precedence, extremal lengths and causal cones on the
//!   two-sheet space.
//! * [`dispersion`]: plane-wave Dirac matrices and the Krein-ratio
//!   classification of spinors.
//! * [`fluctuation`]: scalar inner fluctuations of the electroweak model.

pub mod causality;
pub mod clifford;
pub mod dispersion;
pub mod distance;
pub mod error;
pub mod finite_triple;
pub mod fluctuation;
pub mod matrix;

pub use clifford::{build_gamma_basis, GammaBasis};
pub use error::{Error, Result};
pub use finite_triple::{electroweak_triple, two_point_triple, FiniteTriple};
pub use matrix::{ComplexMatrix, ComplexVector, DEFAULT_TOL};
pub use num_complex::Complex64;
