//! Bezout data for a coprime pair 0 < m < n, and the derived thresholds
//! α*, β* that control which lattice sets Λ_{k,k′} can be nonempty.
//!
//! Solving m·α + n·β = 1 fixes (α, β) only up to adding multiples of
//! (n, −m). We canonicalize to α₀ ∈ (−n/2, n/2] and define
//!
//!   α* = min over representatives α ≡ α₀ (mod n) of |α|,
//!   β* = min over representatives β ≡ β₀ (mod m) of |β|,
//!
//! i.e. the distance of α₀ to the nearest multiple of n (resp. β₀ to the
//! nearest multiple of m). Any solution of m·a + n·b = ±1 must have
//! |a| ≥ α* and |b| ≥ β*, which is the engine behind the emptiness
//! threshold min(k, k′) ≤ min(α*, β*) − 1 checked in the lemma scans.

use crate::{Error, Result};

/// Canonical Bezout solution m·alpha + n·beta = 1 with alpha ∈ (−n/2, n/2].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BezoutPair {
    pub m: i64,
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
}

/// Iterative extended Euclid: returns (g, x, y) with a·x + b·y = g = gcd(a, b).
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (x0, x1) = (x1, x0 - quot * x1);
        (y0, y1) = (y1, y0 - quot * y1);
    }
    (r0, x0, y0)
}

/// Compute the canonical Bezout pair for coprime 0 < m < n.
pub fn bezout_pair(m: i64, n: i64) -> Result<BezoutPair> {
    if !(0 < m && m < n) {
        return Err(Error::InvalidMeasure(format!(
            "frequency pair ({m}, {n}) must satisfy 0 < m < n"
        )));
    }
    let (g, x, _) = ext_gcd(m, n);
    if g != 1 {
        return Err(Error::InvalidMeasure(format!(
            "frequencies ({m}, {n}) are not coprime (gcd {g})"
        )));
    }
    // Shift alpha into (−n/2, n/2]; beta follows from the identity.
    let mut alpha = x.rem_euclid(n); // [0, n)
    if 2 * alpha > n {
        alpha -= n;
    }
    let beta = (1 - m * alpha) / n;
    debug_assert_eq!(m * alpha + n * beta, 1);
    Ok(BezoutPair { m, n, alpha, beta })
}

/// Distance from `a` to the nearest multiple of `modulus` (> 0).
fn min_residue_abs(a: i64, modulus: i64) -> i64 {
    let r = a.rem_euclid(modulus);
    r.min(modulus - r)
}

impl BezoutPair {
    /// α* as defined in the module docs.
    pub fn alpha_star(&self) -> i64 {
        min_residue_abs(self.alpha, self.n)
    }

    /// β* as defined in the module docs.
    pub fn beta_star(&self) -> i64 {
        min_residue_abs(self.beta, self.m)
    }

    pub fn stars(&self) -> (i64, i64) {
        (self.alpha_star(), self.beta_star())
    }
}
