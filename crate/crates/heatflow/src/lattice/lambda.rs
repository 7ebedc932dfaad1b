//! The resonance sets Λ_{k,k′}(m, n) and the two emptiness lemmas about
//! them.
//!
//! For exponents j = (j₁, j₂) with j₁ + j₂ = k and j′ = (j₁′, j₂′) with
//! j₁′ + j₂′ = k′, the pair (j, j′) lies in Λ_{k,k′} when the frequency
//! combination m(j₁ − j₁′) + n(j₂ − j₂′) equals ±1 — exactly the terms of
//! the expanded product |μ̂|^q that land on frequency ±1 and hence feed the
//! first Fourier coefficient. Each solution carries the weight
//! C(k, j₁)·C(k′, j₁′).
//!
//! Two structural facts make the certificate in the sibling module work,
//! and both are verified here by brute force rather than trusted:
//!
//! * parity: if n − m is even (so m, n both odd) and k ≡ k′ (mod 2), the
//!   combination m(j₁−j₁′) + n(j₂−j₂′) has the parity of k − k′, so it
//!   cannot equal ±1 and Λ_{k,k′} is empty;
//! * Bezout threshold: any solution of m·a + n·b = ±1 needs |a| ≥ α* and
//!   |b| ≥ β* (see `bezout`), which forces Λ_{k,k′} = ∅ whenever
//!   min(k, k′) ≤ min(α*, β*) − 1.

use serde::Serialize;

use crate::lattice::bezout::bezout_pair;
use crate::{Error, Result};

/// Hard cap on (k+1)(k′+1) enumeration size for a single set.
const PAIR_CAP: u64 = 100_000_000;

/// One member of Λ_{k,k′}: the exponent splits on each side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaSolution {
    pub j: (i64, i64),
    pub j_prime: (i64, i64),
    /// Which side of ±1 the frequency combination hit.
    pub side: i8,
}

/// The fully enumerated set Λ_{k,k′}(m, n).
#[derive(Clone, Debug, Serialize)]
pub struct LambdaSet {
    pub m: i64,
    pub n: i64,
    pub k: i64,
    pub k_prime: i64,
    pub solutions: Vec<LambdaSolution>,
}

/// Exact binomial coefficient C(k, j) as f64 (exact integer arithmetic
/// internally; k up to ~100 stays well inside u128).
pub(crate) fn choose(k: i64, j: i64) -> f64 {
    debug_assert!(0 <= j && j <= k);
    let j = j.min(k - j) as u128;
    let k = k as u128;
    let mut c: u128 = 1;
    for i in 0..j {
        c = c * (k - i) / (i + 1); // exact: C(k, i+1) integer
    }
    c as f64
}

/// Enumerate Λ_{k,k′}(m, n).
pub fn lambda_set(m: i64, n: i64, k: i64, k_prime: i64) -> Result<LambdaSet> {
    if !(0 < m && m < n) {
        return Err(Error::InvalidMeasure(format!(
            "frequency pair ({m}, {n}) must satisfy 0 < m < n"
        )));
    }
    if k < 0 || k_prime < 0 {
        return Err(Error::InvalidExponents(
            "lattice degrees must be nonnegative".into(),
        ));
    }
    let size = (k as u64 + 1) * (k_prime as u64 + 1);
    if size > PAIR_CAP {
        return Err(Error::CapExceeded(format!(
            "lambda set ({k}, {k_prime}) would enumerate {size} pairs"
        )));
    }
    let mut solutions = Vec::new();
    for j1 in 0..=k {
        let j2 = k - j1;
        for j1p in 0..=k_prime {
            let j2p = k_prime - j1p;
            let v = m * (j1 - j1p) + n * (j2 - j2p);
            if v == 1 || v == -1 {
                solutions.push(LambdaSolution {
                    j: (j1, j2),
                    j_prime: (j1p, j2p),
                    side: v as i8,
                });
            }
        }
    }
    Ok(LambdaSet {
        m,
        n,
        k,
        k_prime,
        solutions,
    })
}

impl LambdaSet {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    /// Σ over solutions of C(k, j₁)·C(k′, j₁′) — the coefficient this set
    /// contributes in front of a_k a_{k′} r^{k+k′}.
    pub fn weighted_count(&self) -> f64 {
        self.solutions
            .iter()
            .map(|s| choose(self.k, s.j.0) * choose(self.k_prime, s.j_prime.0))
            .sum()
    }
}

/// Outcome of a brute-force emptiness-lemma scan over all k, k′ ≤ k_max.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    /// Which lemma was scanned: "parity" or "bezout-threshold".
    pub lemma: &'static str,
    pub m: i64,
    pub n: i64,
    pub k_max: i64,
    /// False when the lemma's hypothesis never applies (parity scan with
    /// n − m odd); the scan is then vacuous and passes.
    pub applicable: bool,
    /// For the Bezout scan: min(α*, β*).
    pub threshold: Option<i64>,
    /// Number of (k, k′) pairs whose emptiness the lemma asserts.
    pub pairs_checked: u64,
    /// Pairs where the lemma claimed empty but enumeration found solutions.
    pub violations: Vec<(i64, i64)>,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check by enumeration: n − m even and k ≡ k′ (mod 2) ⇒ Λ_{k,k′} = ∅.
pub fn verify_parity_lemma(m: i64, n: i64, k_max: i64) -> Result<LemmaReport> {
    let applicable = (n - m) % 2 == 0;
    let mut report = LemmaReport {
        lemma: "parity",
        m,
        n,
        k_max,
        applicable,
        threshold: None,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    // Validate (m, n) even when vacuous.
    bezout_pair(m, n)?;
    if !applicable {
        return Ok(report);
    }
    for k in 0..=k_max {
        for k_prime in 0..=k_max {
            if (k - k_prime) % 2 != 0 {
                continue;
            }
            report.pairs_checked += 1;
            if !lambda_set(m, n, k, k_prime)?.is_empty() {
                report.violations.push((k, k_prime));
            }
        }
    }
    Ok(report)
}

/// Check by enumeration: min(k, k′) ≤ min(α*, β*) − 1 ⇒ Λ_{k,k′} = ∅.
pub fn verify_bezout_lemma(m: i64, n: i64, k_max: i64) -> Result<LemmaReport> {
    let stars = bezout_pair(m, n)?.stars();
    let threshold = stars.0.min(stars.1);
    let mut report = LemmaReport {
        lemma: "bezout-threshold",
        m,
        n,
        k_max,
        applicable: true,
        threshold: Some(threshold),
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for k in 0..=k_max {
        for k_prime in 0..=k_max {
            if k.min(k_prime) > threshold - 1 {
                continue;
            }
            report.pairs_checked += 1;
            if !lambda_set(m, n, k, k_prime)?.is_empty() {
                report.violations.push((k, k_prime));
            }
        }
    }
    Ok(report)
}
