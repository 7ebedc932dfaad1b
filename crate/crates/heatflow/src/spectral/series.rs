//! Series route for p = 1 on integer-supported one-dimensional measures,
//! and the factored derivative that certifies monotonicity signs.
//!
//! Poisson summation turns the frequency integral into a theta-weighted
//! coefficient sum:
//!
//!   Q_{1,q}(t)^q = q^{−1/2} Σ_{n∈ℤ} c_n e^{−πn²/(qt)}
//!               = q^{−1/2} (c₀ + 2 Σ_{n≥1} c_n e^{−πn²/(qt)}),
//!
//! with the c_n from [`super::coeffs`]. Truncation error after N terms is
//! at most 2c₀·e^{−π(N+1)²/(qt)}/(1 − e^{−π(2N+3)/(qt)}) — the |c_n| ≤ c₀
//! domination plus a geometric bound on the theta tail.
//!
//! Differentiating in t and pulling out the n = 1 factor gives
//!
//!   d/dt Q^q = (π q^{−3/2} t^{−2}) e^{−π/(qt)} ·
//!              [ 2c₁ + Σ_{n≥2} 2n² c_n e^{−π(n²−1)/(qt)} ].
//!
//! The prefactor is positive, so the bracket carries the sign. That matters
//! because for small t the derivative itself underflows f64 (it decays like
//! e^{−π/(qt)}), while the bracket tends to the finite limit 2c₁ and stays
//! representable: the sign remains decidable long after the value is gone.

use serde::Serialize;

use crate::measure::DiscreteMeasure;
use crate::spectral::{CoeffTable, QuadratureControl};
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// Hard cap on series length (t so large the series route is the wrong
/// tool).
const MAX_TERMS: i64 = 200_000;

/// Smallest N with 2·e^{−x(N+1)²}/(1 − e^{−x(2N+3)}) ≤ ratio, x = π/(qt).
pub(crate) fn n_required(q: f64, t: f64, ratio: f64) -> Result<i64> {
    let x = PI / (q * t);
    let mut n = (f64::ln(2.0 / ratio).max(0.0) / x).sqrt() as i64;
    loop {
        let bound = 2.0 * (-x * ((n + 1) * (n + 1)) as f64).exp()
            / (1.0 - (-x * (2 * n + 3) as f64).exp());
        if bound <= ratio {
            return Ok(n);
        }
        n += 1 + n / 8;
        if n > MAX_TERMS {
            return Err(Error::CapExceeded(format!(
                "series route would need more than {MAX_TERMS} coefficients at t = {t}"
            )));
        }
    }
}

fn check_q_t(q: f64, t: f64) -> Result<()> {
    if !(q.is_finite() && q >= 2.0) {
        return Err(Error::InvalidExponents(format!("q = {q} must be >= 2")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidExponents(format!(
            "time t = {t} must be positive and finite"
        )));
    }
    Ok(())
}

/// Q_{1,q}(t) via the coefficient series. Builds a fresh table sized for
/// this t; for many evaluations share one table via
/// [`q_series_with_table`].
pub fn q_series(mu: &DiscreteMeasure, q: f64, t: f64, ctrl: &QuadratureControl) -> Result<f64> {
    check_q_t(q, t)?;
    let n = n_required(q, t, 0.25 * ctrl.rel_tol)?;
    let table = CoeffTable::build(mu, q, n, ctrl)?;
    q_series_with_table(&table, t, ctrl)
}

/// Q_{1,q}(t) from a prebuilt coefficient table.
///
/// Fails with [`Error::NonConvergence`] when the table is too short for
/// this t — tables must be built for the largest t they will serve.
pub fn q_series_with_table(table: &CoeffTable, t: f64, ctrl: &QuadratureControl) -> Result<f64> {
    let q = table.q();
    check_q_t(q, t)?;
    let needed = n_required(q, t, 0.25 * ctrl.rel_tol)?;
    if needed > table.n_max() {
        return Err(Error::NonConvergence {
            what: "coefficient series",
            detail: format!(
                "table holds c_0..c_{}, but t = {t} needs {needed} terms",
                table.n_max()
            ),
        });
    }
    let x = PI / (q * t);
    // Ascending magnitude: n = needed down to 1, then the dominant c₀.
    let mut sum = 0.0;
    for n in (1..=needed).rev() {
        sum += 2.0 * table.coeff(n) * (-x * (n * n) as f64).exp();
    }
    sum += table.c0();
    Ok((sum / q.sqrt()).powf(1.0 / q))
}

/// The factored derivative of Q^q along the series route.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivativeCertificate {
    pub t: f64,
    /// d(Q^q)/dt as an f64; underflows to ±0 once t is small enough that
    /// e^{log_prefactor} is subnormal. The bracket still carries the sign.
    pub derivative: f64,
    /// 2c₁ + Σ_{n≥2} 2n² c_n e^{−π(n²−1)/(qt)} — finite for every t > 0.
    pub bracket: f64,
    /// Noise threshold the sign call used: brackets within ±threshold are
    /// declared indeterminate (sign 0) rather than trusted.
    pub threshold: f64,
    /// ln of the positive prefactor: ln π − (3/2)ln q − 2 ln t − π/(qt).
    pub log_prefactor: f64,
    /// −1, 0, +1: the certified sign of the derivative (0 = within noise).
    pub sign: i8,
}

/// Derivative certificate from a prebuilt table.
pub fn q_derivative_certificate_with_table(
    table: &CoeffTable,
    t: f64,
    ctrl: &QuadratureControl,
) -> Result<DerivativeCertificate> {
    let q = table.q();
    check_q_t(q, t)?;
    let x = PI / (q * t);
    let scale = table.c0().abs().max(1.0);
    let threshold = f64::max(1e-12, 100.0 * ctrl.rel_tol) * scale;

    // Extend until the next-term bound is negligible against both the
    // tolerance and the decision threshold.
    let target = (0.25 * ctrl.rel_tol * scale).min(0.1 * threshold);
    let mut needed = 1i64;
    loop {
        let m = needed + 1;
        let bound = 2.0 * ((m * m) as f64) * table.c0().abs()
            * (-x * ((m * m - 1) as f64)).exp()
            / (1.0 - (-x * (2 * m + 1) as f64).exp());
        if bound <= target {
            break;
        }
        needed += 1;
        if needed > table.n_max() {
            return Err(Error::NonConvergence {
                what: "derivative series",
                detail: format!(
                    "table holds c_0..c_{}, insufficient at t = {t}",
                    table.n_max()
                ),
            });
        }
    }

    let mut bracket = 0.0;
    for n in (2..=needed).rev() {
        bracket += 2.0 * ((n * n) as f64) * table.coeff(n) * (-x * ((n * n - 1) as f64)).exp();
    }
    bracket += 2.0 * table.coeff(1);

    let log_prefactor = PI.ln() - 1.5 * q.ln() - 2.0 * t.ln() - x;
    let derivative = log_prefactor.exp() * bracket;
    let sign = if bracket > threshold {
        1
    } else if bracket < -threshold {
        -1
    } else {
        0
    };
    Ok(DerivativeCertificate {
        t,
        derivative,
        bracket,
        threshold,
        log_prefactor,
        sign,
    })
}

/// Derivative certificate, building its own coefficient table.
pub fn q_derivative_certificate(
    mu: &DiscreteMeasure,
    q: f64,
    t: f64,
    ctrl: &QuadratureControl,
) -> Result<DerivativeCertificate> {
    check_q_t(q, t)?;
    // The n² weight in the bracket needs a few more terms than the plain
    // series at the same tolerance.
    let n = (n_required(q, t, 0.25 * ctrl.rel_tol)? + 8).max(12);
    let table = CoeffTable::build(mu, q, n, ctrl)?;
    q_derivative_certificate_with_table(&table, t, ctrl)
}

/// d(Q_{1,q}^q)/dt at t.
pub fn q_derivative(mu: &DiscreteMeasure, q: f64, t: f64, ctrl: &QuadratureControl) -> Result<f64> {
    Ok(q_derivative_certificate(mu, q, t, ctrl)?.derivative)
}

#[cfg(test)]
// Reference constants keep every digit of the high-precision values they
// were frozen from, beyond what an f64 can represent.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::lattice::{generate_params, Family};
    use approx::assert_relative_eq;

    fn ctrl() -> QuadratureControl {
        QuadratureControl::default()
    }

    fn family_a_q3() -> DiscreteMeasure {
        generate_params(3.0, Family::A, None).unwrap().measure()
    }

    #[test]
    fn single_atom_is_constant_in_t() {
        // For δ₀: c₀ = 1, all other c_n = 0, so Q ≡ q^{−1/(2q)}.
        let mu = DiscreteMeasure::dirac(1);
        for q in [2.0f64, 2.5, 3.0, 4.0] {
            let expect = q.powf(-1.0 / (2.0 * q));
            for t in [1e-3, 0.3, 7.0] {
                assert_relative_eq!(
                    q_series(&mu, q, t, &ctrl()).unwrap(),
                    expect,
                    max_relative = 1e-12
                );
            }
        }
    }

    /// External 30-digit reference values of Q_{1,3}(t) for the family-A
    /// configuration δ₀ + 0.4δ₇ + 0.4δ₉.
    #[test]
    fn family_a_q3_reference_values() {
        let mu = family_a_q3();
        let cases = [
            (0.02, 1.001901445402497375156),
            (0.05, 1.001901445402496312002),
            (0.2, 1.001901438463021875163),
            (1.0, 1.004074824772403960566),
        ];
        for (t, expect) in cases {
            assert_relative_eq!(
                q_series(&mu, 3.0, t, &ctrl()).unwrap(),
                expect,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn early_decrease_survives_rounding_on_a_shared_table() {
        // The entire decrease between t = 0.02 and 0.05 is ~5 ulps, and
        // 0.05 → 0.2 is ~31 ulps; with one table the exponential weights
        // are the only difference between evaluations, so the strict
        // ordering must survive in f64.
        let mu = family_a_q3();
        let table = CoeffTable::build(&mu, 3.0, 12, &ctrl()).unwrap();
        let q002 = q_series_with_table(&table, 0.02, &ctrl()).unwrap();
        let q005 = q_series_with_table(&table, 0.05, &ctrl()).unwrap();
        let q020 = q_series_with_table(&table, 0.2, &ctrl()).unwrap();
        assert!(q002 > q005, "Q(0.02) = {q002:.17e} vs Q(0.05) = {q005:.17e}");
        assert!(q005 > q020, "Q(0.05) = {q005:.17e} vs Q(0.2) = {q020:.17e}");
    }

    #[test]
    fn bracket_reference_values_and_signs() {
        let mu = family_a_q3();
        let cases: &[(f64, f64, i8)] = &[
            (0.02, -6.91465086081e-6, -1),
            (0.1, -6.91465079273e-6, -1),
            (0.2, -6.46295073068e-6, -1),
            (0.25, 3.53800301261e-6, 1),
            (0.3, 7.79664112828e-5, 1),
        ];
        for &(t, expect, sign) in cases {
            let cert = q_derivative_certificate(&mu, 3.0, t, &ctrl()).unwrap();
            assert_relative_eq!(cert.bracket, expect, max_relative = 1e-7);
            assert_eq!(cert.sign, sign, "t = {t}");
            assert!(cert.threshold < expect.abs());
        }
    }

    #[test]
    fn derivative_value_when_representable() {
        // At t = 0.02 the prefactor e^{−π/(3t)} ≈ e^{−52} is tiny but the
        // product is still normal: reference −1.9035853694e−25.
        let mu = family_a_q3();
        let d = q_derivative(&mu, 3.0, 0.02, &ctrl()).unwrap();
        assert_relative_eq!(d, -1.9035853694e-25, max_relative = 1e-6);
    }

    #[test]
    fn derivative_underflows_but_sign_survives() {
        // At t = 5e−4 the prefactor exponent is −π/(3t) − 2 ln t ≈ −2079,
        // far below f64 range: the derivative collapses to −0.0 while the
        // bracket still certifies the sign.
        let mu = family_a_q3();
        let cert = q_derivative_certificate(&mu, 3.0, 5e-4, &ctrl()).unwrap();
        assert_eq!(cert.derivative, 0.0);
        assert!(cert.derivative.is_sign_negative());
        assert_eq!(cert.sign, -1);
        assert_relative_eq!(cert.bracket, 2.0 * -3.4573254304034623461e-6, max_relative = 1e-4);
    }

    #[test]
    fn even_q_bracket_never_certifies_negative() {
        // q = 4 on the same support: c₁ = 0 exactly, so the bracket sits at
        // quadrature-noise level near t = 0 (sign 0) and goes positive once
        // the n ≥ 2 terms wake up.
        let mu = family_a_q3();
        let near_zero = q_derivative_certificate(&mu, 4.0, 0.02, &ctrl()).unwrap();
        assert_eq!(near_zero.sign, 0);
        let later = q_derivative_certificate(&mu, 4.0, 0.3, &ctrl()).unwrap();
        assert_relative_eq!(later.bracket, 2.30561646876e-3, max_relative = 1e-7);
        assert_eq!(later.sign, 1);
    }

    #[test]
    fn location_scaling_identity_through_the_series() {
        // Dilating the support by s = 2 (still integer!) must reproduce
        // Q at t/s² = 1/4 when evaluated at t = 1.
        let mu = family_a_q3();
        let scaled = mu.scale_locations(2.0).unwrap();
        let lhs = q_series(&scaled, 3.0, 1.0, &ctrl()).unwrap();
        let rhs = q_series(&mu, 3.0, 0.25, &ctrl()).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
    }

    #[test]
    fn table_too_short_is_an_error() {
        let mu = family_a_q3();
        let table = CoeffTable::build(&mu, 3.0, 2, &ctrl()).unwrap();
        assert!(matches!(
            q_series_with_table(&table, 50.0, &ctrl()),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn absurd_times_hit_the_cap() {
        assert!(matches!(
            n_required(2.0, 1e12, 1e-11),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn input_validation() {
        let mu = family_a_q3();
        assert!(q_series(&mu, 1.5, 1.0, &ctrl()).is_err());
        assert!(q_series(&mu, 3.0, 0.0, &ctrl()).is_err());
        assert!(q_series(&mu, 3.0, -1.0, &ctrl()).is_err());
        assert!(q_series(&mu, 3.0, f64::INFINITY, &ctrl()).is_err());
    }
}
