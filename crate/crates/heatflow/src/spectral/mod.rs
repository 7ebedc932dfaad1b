//! Numerical evaluation of the heat-flow functional
//!
//!   Q_{p,q}(t) = t^{(d/2)(1/q − 1/p′)} ‖(u(t,·)^{1/p})^‖_q,
//!   u(t,·) = H_t ∗ μ,
//!
//! along three independent routes, plus its t-derivative, a model-error
//! probe, and grid sweeps with monotonicity verdicts.
//!
//! Routes (dimension one):
//!
//! * series — p = 1, integer support: |μ̂|^q is 1-periodic, so
//!   Q^q = q^{−1/2} Σ_n c_n e^{−πn²/(qt)} with Fourier coefficients c_n
//!   from a [`CoeffTable`]; exponentially convergent, and the only route
//!   whose derivative has a factored form with a representable sign bracket;
//! * direct — p = 1, any support: Q^q = t^{1/2} ∫ e^{−qπtξ²} |μ̂(ξ)|^q dξ
//!   by doubling trapezoid quadrature on the line;
//! * grid — p > 1: sample u^{1/p} in space, FFT, integrate |ĝ|^q in
//!   frequency.
//!
//! Agreement between routes is one of the standing cross-checks; nothing
//! in `series` is reused by `direct`/`grid` beyond the measure itself.

mod coeffs;
mod direct;
mod series;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use coeffs::{fourier_coefficient, CoeffTable};
pub use direct::{
    james_identity_check, large_t_asymptote, model_error, q_direct, sliding_q, JamesCheck,
    ModelError,
};
pub use series::{
    q_derivative, q_derivative_certificate, q_derivative_certificate_with_table, q_series,
    q_series_with_table, DerivativeCertificate,
};
pub use sweep::{classify_points, sweep, GridScale, SweepGrid, SweepPoint, SweepReport, Verdict};

/// Which evaluation route produced a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Series,
    Direct,
    Grid,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Series => "series",
            Route::Direct => "direct",
            Route::Grid => "grid",
        }
    }
}

/// Accuracy/budget knobs shared by all quadratures.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadratureControl {
    /// Target relative accuracy of every reported value.
    pub rel_tol: f64,
    /// Panel count the first refinement level starts from (rounded up to a
    /// power of two, and raised further when the integrand's bandwidth
    /// demands it).
    pub initial_panels: usize,
    /// How many halvings a quadrature may attempt before giving up with
    /// [`Error::NonConvergence`].
    pub max_refinements: u32,
    /// Multiplier (> 1) widening every analytically derived truncation
    /// window.
    pub tail_safety: f64,
}

impl Default for QuadratureControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            initial_panels: 256,
            max_refinements: 12,
            tail_safety: 1.25,
        }
    }
}

impl QuadratureControl {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && 0.0 < self.rel_tol && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidExponents(format!(
                "relative tolerance {} must lie in (0, 1e-2]",
                self.rel_tol
            )));
        }
        if self.initial_panels < 8 {
            return Err(Error::InvalidExponents(
                "initial_panels must be at least 8".into(),
            ));
        }
        if !(self.tail_safety.is_finite() && self.tail_safety >= 1.0) {
            return Err(Error::InvalidExponents(
                "tail_safety must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// ln(1/rel_tol) plus margin — the "how many e-foldings must a tail
    /// decay" currency used by all window computations.
    pub(crate) fn log_budget(&self) -> f64 {
        (1.0 / self.rel_tol).ln() + 4.0
    }
}
