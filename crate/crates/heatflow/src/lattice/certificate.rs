//! Rigorous sign certificate for c₁ + c₋₁, the coefficient pair that
//! drives the short-time behaviour of Q_{1,q}.
//!
//! For μ = δ₀ + r·δ_m + r·δ_n with gcd(m, n) = 1 the exact expansion
//!
//!   c₁ + c₋₁ = Σ_{k,k′ ≥ 0} a_k a_{k′} r^{k+k′} Σ_{Λ_{k,k′}} C(k, j₁) C(k′, j₁′),
//!
//! with a_k = C(q/2, k), converges absolutely whenever 2r < 1 (each inner
//! sum is bounded by the full binomial mass 2^{k+k′}). The certificate
//! truncates the double sum to the box k, k′ ≤ K and bounds the discarded
//! part by a computed quantity, so the reported sign is a proof, not an
//! estimate:
//!
//!   |tail| ≤ 2·S·T + T²  with  S = Σ_{k ≤ K} |a_k| (2r)^k,
//!                              T = Σ_{k > K} |a_k| (2r)^k ≤ |a_{K+1}| (2r)^{K+1} / (1 − 2r).
//!
//! The geometric bound on T uses |a_{k+1}| ≤ |a_k| beyond the sign change
//! at q/2 + 1 (ratio |q/2 − k|/(k+1) < 1 there), so K must exceed q/2 + 1;
//! the constructor enforces that. S·T terms cover products with one index
//! inside the box and one outside, T² both outside.
//!
//! The caller decides what to do with an inconclusive result (|value| not
//! exceeding the tail bound); nothing here ever rounds a maybe into a no.

use serde::Serialize;

use crate::lattice::binomial::binomial_seq;
use crate::lattice::lambda::lambda_set;
use crate::lattice::params::CounterexampleParams;
use crate::{Error, Result};

/// Largest accepted truncation degree (keeps binomial weights exact and the
/// Λ enumeration cheap).
pub const MAX_BOX_DEGREE: i64 = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateVerdict {
    /// value + tail < 0: c₁ + c₋₁ is provably negative.
    NegativeCertified,
    /// value − tail > 0: provably positive.
    PositiveCertified,
    /// The tail bound straddles zero; enlarge the box.
    Inconclusive,
}

/// Truncated value of c₁ + c₋₁ together with a rigorous remainder bound.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub q: f64,
    pub m: i64,
    pub n: i64,
    pub r: f64,
    pub k_max: i64,
    /// Σ over the box of a_k a_{k′} r^{k+k′} · (Λ weight).
    pub value: f64,
    /// Rigorous bound on everything outside the box.
    pub tail_bound: f64,
    /// S = Σ_{k ≤ K} |a_k| (2r)^k.
    pub box_weight: f64,
    /// T = geometric bound on Σ_{k > K} |a_k| (2r)^k.
    pub tail_weight: f64,
    /// Number of (k, k′) pairs with k ≥ k′ whose Λ set is nonempty.
    pub contributing_pairs: u64,
    /// First such pair in (k ascending, k′ ascending) scan order.
    pub first_pair: Option<(i64, i64)>,
    pub verdict: CertificateVerdict,
}

impl Certificate {
    /// Signed upper edge of the certified interval.
    pub fn upper_bound(&self) -> f64 {
        self.value + self.tail_bound
    }

    /// Signed lower edge of the certified interval.
    pub fn lower_bound(&self) -> f64 {
        self.value - self.tail_bound
    }

    pub fn is_negative_certified(&self) -> bool {
        self.verdict == CertificateVerdict::NegativeCertified
    }
}

/// Evaluate the certificate for an explicit (q, m, n, r) configuration.
///
/// Requirements: q ≥ 2 and not an even integer, 0 < m < n coprime,
/// 0 < r < 1/2, and q/2 + 1 < k_max ≤ [`MAX_BOX_DEGREE`].
pub fn c1_sum(q: f64, m: i64, n: i64, r: f64, k_max: i64) -> Result<Certificate> {
    if !(q.is_finite() && q >= 2.0) {
        return Err(Error::InvalidExponents(format!("q = {q} must be >= 2")));
    }
    let rounded = q.round();
    if (q - rounded).abs() <= 1e-12 * q.max(1.0) && (rounded as i64) % 2 == 0 {
        return Err(Error::EvenIntegerQ { q });
    }
    if !(r.is_finite() && 0.0 < r && r < 0.5) {
        return Err(Error::InvalidMeasure(format!(
            "satellite weight r = {r} must lie in (0, 1/2) for the geometric tail"
        )));
    }
    if k_max > MAX_BOX_DEGREE {
        return Err(Error::CapExceeded(format!(
            "k_max = {k_max} exceeds the supported maximum {MAX_BOX_DEGREE}"
        )));
    }
    if (k_max as f64) <= q / 2.0 + 1.0 {
        return Err(Error::InvalidExponents(format!(
            "k_max = {k_max} must exceed q/2 + 1 = {} for the tail bound to be valid",
            q / 2.0 + 1.0
        )));
    }

    let a = binomial_seq(q, k_max as usize + 1);
    let two_r = 2.0 * r;

    let mut value = 0.0f64;
    let mut contributing_pairs = 0u64;
    let mut first_pair = None;
    // Λ_{k,k′} and Λ_{k′,k} carry equal weighted counts (sign-flip
    // bijection), so scan k′ ≤ k and double the off-diagonal terms.
    for k in 0..=k_max {
        for k_prime in 0..=k {
            let w = lambda_set(m, n, k, k_prime)?.weighted_count();
            if w == 0.0 {
                continue;
            }
            contributing_pairs += 1;
            if first_pair.is_none() {
                first_pair = Some((k, k_prime));
            }
            let mult = if k == k_prime { 1.0 } else { 2.0 };
            value += mult
                * a.coeff(k as usize)
                * a.coeff(k_prime as usize)
                * r.powi((k + k_prime) as i32)
                * w;
        }
    }

    let box_weight: f64 = (0..=k_max)
        .map(|k| a.coeff(k as usize).abs() * two_r.powi(k as i32))
        .sum();
    let tail_weight =
        a.coeff(k_max as usize + 1).abs() * two_r.powi(k_max as i32 + 1) / (1.0 - two_r);
    let tail_bound = 2.0 * box_weight * tail_weight + tail_weight * tail_weight;

    let verdict = if value + tail_bound < 0.0 {
        CertificateVerdict::NegativeCertified
    } else if value - tail_bound > 0.0 {
        CertificateVerdict::PositiveCertified
    } else {
        CertificateVerdict::Inconclusive
    };

    Ok(Certificate {
        q,
        m,
        n,
        r,
        k_max,
        value,
        tail_bound,
        box_weight,
        tail_weight,
        contributing_pairs,
        first_pair,
        verdict,
    })
}

/// Certificate for a family configuration.
pub fn c1_certificate(params: &CounterexampleParams, k_max: i64) -> Result<Certificate> {
    c1_sum(params.q, params.m, params.n, params.r, k_max)
}

/// Sign bookkeeping over the truncation box: which (k, k′) pairs actually
/// reach frequency ±1, and with what product sign.
#[derive(Clone, Debug, Serialize)]
pub struct SignStructure {
    pub q: f64,
    pub m: i64,
    pub n: i64,
    pub cap: i64,
    /// Pairs (k ≥ k′) with a_k a_{k′} > 0 and Λ_{k,k′} ≠ ∅. Provably empty
    /// for the families; anything here disproves the construction.
    pub positive_product_pairs: Vec<(i64, i64)>,
    /// First pair (scan order: k ascending, then k′ ≤ k ascending) with
    /// a_k a_{k′} < 0 and Λ_{k,k′} ≠ ∅.
    pub first_negative_pair: Option<(i64, i64)>,
    /// Where the construction predicts that first pair: (α*, β*).
    pub predicted_pair: (i64, i64),
    pub pairs_scanned: u64,
}

impl SignStructure {
    /// No positive-product resonances, and the first negative one is where
    /// the Bezout analysis says it must be.
    pub fn pass(&self) -> bool {
        self.positive_product_pairs.is_empty()
            && self.first_negative_pair == Some(self.predicted_pair)
    }
}

/// Scan all k′ ≤ k ≤ cap and classify nonempty Λ sets by the sign of
/// a_k a_{k′}.
pub fn verify_sign_structure(params: &CounterexampleParams, cap: i64) -> Result<SignStructure> {
    if cap > MAX_BOX_DEGREE {
        return Err(Error::CapExceeded(format!(
            "cap = {cap} exceeds the supported maximum {MAX_BOX_DEGREE}"
        )));
    }
    let a = binomial_seq(params.q, cap as usize);
    let mut out = SignStructure {
        q: params.q,
        m: params.m,
        n: params.n,
        cap,
        positive_product_pairs: Vec::new(),
        first_negative_pair: None,
        predicted_pair: (params.alpha_star, params.beta_star),
        pairs_scanned: 0,
    };
    for k in 0..=cap {
        for k_prime in 0..=k {
            out.pairs_scanned += 1;
            let product = a.coeff(k as usize) * a.coeff(k_prime as usize);
            if product == 0.0 {
                continue;
            }
            if lambda_set(params.m, params.n, k, k_prime)?.is_empty() {
                continue;
            }
            if product > 0.0 {
                out.positive_product_pairs.push((k, k_prime));
            } else if out.first_negative_pair.is_none() {
                out.first_negative_pair = Some((k, k_prime));
            }
        }
    }
    Ok(out)
}
