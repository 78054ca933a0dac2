//! Computational toolkit for the geometric side of the GL(3) trace formula.
//!
//! The crate is organised bottom-up:
//!
//! * [`root_system`]: exact root data of GL(3), standard parabolics, the Weyl group.
//! * [`combinatorics`]: cone indicators on 𝔞₀ and verifiers for their alternating-sum identities.
//! * [`convex_weight`]: convex-hull weights, the M₂₁ interval weight and the c_{M₀}(n) weight.
//! * [`orbit_classifier`]: exact classification of rational 3×3 matrices and Jordan decomposition.
//! * [`woi_quadrature`]: weighted orbital integrals at the real place by adaptive quadrature.
//! * [`zeta_engine`]: partial zeta values, Laurent data at s = 1, local integrals and coefficients.
//!
//! Exact arithmetic uses [`num_rational::BigRational`]; real-valued outputs are `f64`.

#![allow(clippy::needless_range_loop)]

pub mod combinatorics;
pub mod convex_weight;
pub mod error;
pub mod orbit_classifier;
pub mod root_system;
pub mod woi_quadrature;
pub mod zeta_engine;

pub use error::{Error, Result};
