//! Generalized binomial coefficients a_k = C(q/2, k).
//!
//! These are the Taylor coefficients of (1 + y)^{q/2}; expanding
//! |μ̂(ξ)|^q = (|μ̂|²)^{q/2} around the dominant atom produces them as the
//! weights of the lattice sums in the sibling modules. Their sign pattern is
//! the whole point: a_k > 0 for k < q/2 + 1, then alternating signs — unless
//! q is an even integer, in which case the sequence terminates (a_k = 0 for
//! k > q/2) and no sign change ever occurs.

/// The sequence a_k = C(q/2, k) for k = 0..=k_max, built by the recurrence
/// a_{k+1} = a_k · (q/2 − k)/(k + 1).
#[derive(Clone, Debug)]
pub struct BinomialSeq {
    q: f64,
    coeffs: Vec<f64>,
}

/// Compute C(q/2, k) for k = 0..=k_max.
pub fn binomial_seq(q: f64, k_max: usize) -> BinomialSeq {
    assert!(q.is_finite() && q > 0.0, "q must be positive and finite");
    let half = q / 2.0;
    let mut coeffs = Vec::with_capacity(k_max + 1);
    let mut a = 1.0f64;
    for k in 0..=k_max {
        coeffs.push(a);
        a *= (half - k as f64) / (k as f64 + 1.0);
    }
    BinomialSeq { q, coeffs }
}

impl BinomialSeq {
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    /// max_k |a_k| over the stored range.
    pub fn abs_sup(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Number of leading strictly-positive coefficients. Equals
    /// ⌈q/2 + 1⌉ (with the convention "smallest integer strictly greater"
    /// at integer arguments) for non-even q.
    pub fn positive_prefix_len(&self) -> usize {
        self.coeffs.iter().take_while(|&&a| a > 0.0).count()
    }
}
