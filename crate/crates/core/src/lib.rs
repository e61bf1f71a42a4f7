//! Desk-scale verification of first-order period matrices of plumbed curve
//! and surface families.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] and [`jets`]: exact and floating coefficient fields and
//!   truncated multivariate polynomials;
//! * [`alkanes`]: enumeration and canonical forms of trees of maximum
//!   degree four;
//! * [`elliptic`]: marked elliptic curves and modular reduction;
//! * [`curve_periods`]: first-order period matrices of plumbed curves;
//! * [`relations`]: the octic relations and their vanishing checks;
//! * [`surfaces`]: stratum dimensions and rank-one edge matrices for the
//!   surface side;
//! * [`checks`]: the verification suite driven by the CLI `selftest`.

pub mod alkanes;
pub mod checks;
pub mod curve_periods;
pub mod elliptic;
pub mod error;
pub mod field;
pub mod jets;
pub mod linalg;
pub mod relations;
pub mod rng;
pub mod surfaces;

pub use alkanes::{enumerate_alkanes, Alkane, CanonicalCode, ValencyProfile};
pub use error::{Error, Result};
pub use field::{Coefficient, CoefficientField, GaussianRational};
pub use jets::{Exponent, Jet, JetRing};
pub use num_complex::Complex64;
