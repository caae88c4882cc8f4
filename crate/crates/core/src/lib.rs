//! Exact symbolic engine for the two D-module free resolutions of the space
//! of KdV fields.
//!
//! Layers, bottom up:
//!
//! * [`algebra`]: rationals, graded polynomials, q-series, t-series, linear algebra.
//! * [`diffalg`]: the differential algebra `A = Q[u, u′, …]`, hierarchy flows,
//!   `S`-polynomials, `ζ`, `ω` and the `η` decomposition.
//! * [`fock`]: charged free fermions, normal ordering, Wick determinants and
//!   the boson–fermion map onto `Q[J] ≅ Q[S̄]`.
//! * [`dmod`]: the operators `Q` and `C`, the tilde basis, `ev₁`, `ev₂`,
//!   degree-wise kernels, characters and null-vector reports.
//! * [`taulab`]: explicit tau functions and the series identities they satisfy.
//!
//! Conventions fixed by calibration: hierarchy flows act by
//! `∂ₙu = −2·S′ₙ₊₁` ([`diffalg::C_FLOW`]) and the linear term of `C` carries
//! `c0 = 2` ([`dmod::C0`]).

pub mod algebra;
pub mod diffalg;
pub mod dmod;
pub mod error;
pub mod exec;
pub mod fock;
pub mod taulab;

pub use error::{Error, Result};
pub use exec::Strategy;
