//! Numerical and exact verification tools for heat-flow monotonicity of
//! Gaussian superpositions.
//!
//! Start from a finite nonnegative measure μ (a [`measure::DiscreteMeasure`]),
//! run it under the heat semigroup u(t,·) = H_t ∗ μ, and track
//!
//! ```text
//! Q_{p,q}(t) = t^{(d/2)(1/q − 1/p′)} ‖(u(t,·)^{1/p})^‖_q,   1 ≤ p ≤ 2, 2 ≤ q ≤ p′.
//! ```
//!
//! For even integer q this quantity is nondecreasing in t; for non-even q
//! there are three-atom measures δ₀ + rδ_m + rδ_n on which it strictly
//! decreases on an initial time interval. The crate provides:
//!
//! * [`spectral`] — evaluation of Q_{p,q}(t) along three independent
//!   routes (periodic coefficient series, line quadrature, spatial
//!   grid/FFT), derivative sign certificates, monotonicity sweeps with
//!   verdicts, a dominant-atom model error, and the q = 4 convolution
//!   identity;
//! * [`lattice`] — the combinatorics that make the counterexamples
//!   checkable: binomial expansion of |μ̂|^q, the ±1 frequency-collision
//!   sets Λ_{k,k′} with their two emptiness lemmas, parameter families
//!   producing (m, n) pairs for any non-even q ≥ 2, and a rigorous
//!   truncation-bounded certificate that c₁ + c₋₁ < 0;
//! * [`blcheck`] — exact rational-arithmetic verification of the scaling
//!   condition for the multilinear system underlying the even-q case;
//! * [`exec`] — the small data-parallel driver everything fans out
//!   through (rayon when the `parallel` feature is on, sequential
//!   otherwise).
//!
//! Everything numeric carries explicit tolerances and truncation bounds;
//! everything structural (lattice emptiness, rational matrix identities)
//! is checked exactly. The two never mix: a sign claimed by a certificate
//! is backed by a bound, not by "the float looked negative".

pub mod blcheck;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod measure;
pub mod spectral;

pub use error::{Error, Result};
pub use measure::{Atom, DiscreteMeasure, ExponentPair};
