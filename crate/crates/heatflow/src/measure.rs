//! Finite nonnegative atomic measures μ = Σ_j w_j δ_{x_j} on ℝ^d and the
//! exponent pairs (p, q) they are tested against.
//!
//! Two operations defined here are the ground truth everything else builds
//! on:
//!
//! * the Fourier transform  μ̂(ξ) = Σ_j w_j e^{−2πi x_j·ξ}  (so
//!   μ̂(0) = total mass), and
//! * the heat evolution  u(t, x) = (H_t ∗ μ)(x)  with the kernel
//!   H_t(x) = t^{−d/2} e^{−π|x|²/t}, whose transform is e^{−πt|ξ|²}.
//!
//! Both are exact finite sums, no quadrature involved.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative slack used when deciding whether a coordinate is an integer.
const INTEGER_EPS: f64 = 1e-12;

/// One weighted support point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    /// Location in ℝ^d.
    pub x: Vec<f64>,
    /// Weight, strictly positive.
    pub w: f64,
}

/// A finite superposition of point masses with strictly positive weights.
///
/// Invariants (enforced on every construction path, including JSON):
/// at least one atom, all coordinates finite, all weights finite and
/// positive, every atom of the stated dimension, no duplicate locations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteMeasure {
    dim: usize,
    atoms: Vec<Atom>,
}

impl<'de> Deserialize<'de> for DiscreteMeasure {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            atoms: Vec<Atom>,
        }
        let raw = Raw::deserialize(deserializer)?;
        DiscreteMeasure::new(raw.dim, raw.atoms).map_err(serde::de::Error::custom)
    }
}

impl DiscreteMeasure {
    /// Validating constructor.
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMeasure("dimension must be >= 1".into()));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure has no atoms".into()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.x.len() != dim {
                return Err(Error::InvalidMeasure(format!(
                    "atom {i} has {} coordinates, expected {dim}",
                    a.x.len()
                )));
            }
            if !a.x.iter().all(|c| c.is_finite()) {
                return Err(Error::InvalidMeasure(format!(
                    "atom {i} has a non-finite coordinate"
                )));
            }
            if !(a.w.is_finite() && a.w > 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "atom {i} has weight {}, expected a finite positive value",
                    a.w
                )));
            }
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if atoms[i].x == atoms[j].x {
                    return Err(Error::InvalidMeasure(format!(
                        "atoms {i} and {j} share the location {:?}",
                        atoms[i].x
                    )));
                }
            }
        }
        Ok(Self { dim, atoms })
    }

    /// One-dimensional convenience constructor from (location, weight) pairs.
    pub fn line(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            1,
            pairs
                .iter()
                .map(|&(x, w)| Atom { x: vec![x], w })
                .collect(),
        )
    }

    /// Unit point mass at the origin of ℝ^d.
    pub fn dirac(dim: usize) -> Self {
        Self {
            dim,
            atoms: vec![Atom {
                x: vec![0.0; dim.max(1)],
                w: 1.0,
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// μ(ℝ^d) = Σ_j w_j.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }

    pub fn max_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).fold(0.0, f64::max)
    }

    /// μ̂(ξ) = Σ_j w_j e^{−2πi x_j·ξ}.
    pub fn mu_hat(&self, xi: &[f64]) -> Complex64 {
        assert_eq!(xi.len(), self.dim, "frequency has wrong dimension");
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            let phase: f64 = a.x.iter().zip(xi).map(|(x, f)| x * f).sum();
            let angle = -2.0 * std::f64::consts::PI * phase;
            acc += a.w * Complex64::new(angle.cos(), angle.sin());
        }
        acc
    }

    /// One-dimensional shortcut for [`Self::mu_hat`].
    pub fn mu_hat_1d(&self, xi: f64) -> Complex64 {
        self.mu_hat(std::slice::from_ref(&xi))
    }

    /// u(t, x) = Σ_j w_j t^{−d/2} e^{−π|x−x_j|²/t}, for t > 0.
    pub fn heat_evolve(&self, t: f64, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "point has wrong dimension");
        assert!(t > 0.0 && t.is_finite(), "time must be positive and finite");
        let scale = t.powf(-(self.dim as f64) / 2.0);
        let mut acc = 0.0;
        for a in &self.atoms {
            let d2: f64 = a.x.iter().zip(x).map(|(c, y)| (c - y) * (c - y)).sum();
            acc += a.w * (-std::f64::consts::PI * d2 / t).exp();
        }
        scale * acc
    }

    /// The companion measure with weights raised to 1/p: Σ_j w_j^{1/p} δ_{x_j}.
    pub fn root_weights(&self, p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponents(format!(
                "weight exponent p = {p} must satisfy p >= 1"
            )));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                x: a.x.clone(),
                w: a.w.powf(1.0 / p),
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            atoms,
        })
    }

    /// d-fold tensor power μ^{⊗d} on ℝ^{dim·d}: atoms are all location
    /// tuples, weights multiply. Atom count grows like n^d, capped at 10^6.
    pub fn tensor_power(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidMeasure("tensor power must be >= 1".into()));
        }
        let count = (self.atoms.len() as f64).powi(d as i32);
        if count > 1e6 {
            return Err(Error::CapExceeded(format!(
                "tensor power would create {count:.1e} atoms"
            )));
        }
        let mut atoms = vec![Atom {
            x: Vec::new(),
            w: 1.0,
        }];
        for _ in 0..d {
            let mut next = Vec::with_capacity(atoms.len() * self.atoms.len());
            for partial in &atoms {
                for a in &self.atoms {
                    let mut x = partial.x.clone();
                    x.extend_from_slice(&a.x);
                    next.push(Atom {
                        x,
                        w: partial.w * a.w,
                    });
                }
            }
            atoms = next;
        }
        Self::new(self.dim * d, atoms)
    }

    /// Pushforward under x ↦ s·x (s > 0): same weights, dilated support.
    pub fn scale_locations(&self, s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "location scale {s} must be positive and finite"
            )));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                x: a.x.iter().map(|c| c * s).collect(),
                w: a.w,
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            atoms,
        })
    }

    /// True when every support coordinate is an integer (up to 1e−12
    /// relative slack). In dimension one this is what makes |μ̂|^q a
    /// 1-periodic function of ξ, unlocking the Fourier-series route.
    pub fn is_integer_supported(&self) -> bool {
        self.atoms.iter().all(|a| {
            a.x.iter()
                .all(|&c| (c - c.round()).abs() <= INTEGER_EPS * c.abs().max(1.0))
        })
    }

    /// (min, max) of the support; dimension one only.
    pub fn span_1d(&self) -> (f64, f64) {
        assert_eq!(self.dim, 1, "span_1d requires a one-dimensional measure");
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for a in &self.atoms {
            lo = lo.min(a.x[0]);
            hi = hi.max(a.x[0]);
        }
        (lo, hi)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serialization cannot fail")
    }
}

/// An admissible exponent pair: 1 ≤ p ≤ 2 and 2 ≤ q ≤ p′, where
/// p′ = p/(p−1) is the dual exponent (p′ = ∞ when p = 1).
///
/// Constructed from floats or from exact fractions; the fraction form is
/// remembered so that "is q an even integer" can be answered exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPair {
    p: f64,
    q: f64,
    q_fraction: Option<(i64, i64)>,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && (1.0..=2.0).contains(&p)) {
            return Err(Error::InvalidExponents(format!(
                "p = {p} must lie in [1, 2]"
            )));
        }
        if !(q.is_finite() && q >= 2.0) {
            return Err(Error::InvalidExponents(format!("q = {q} must be >= 2")));
        }
        // q <= p' rewritten as q (p − 1) <= p to stay finite at p = 1.
        if q * (p - 1.0) > p + 1e-12 * q {
            return Err(Error::InvalidExponents(format!(
                "q = {q} exceeds the dual exponent p' = {}",
                p / (p - 1.0)
            )));
        }
        Ok(Self {
            p,
            q,
            q_fraction: None,
        })
    }

    /// Exact-fraction constructor: p = p_num/p_den, q = q_num/q_den.
    pub fn from_fractions(p: (i64, i64), q: (i64, i64)) -> Result<Self> {
        let (pn, pd) = p;
        let (qn, qd) = q;
        if pd <= 0 || qd <= 0 {
            return Err(Error::InvalidExponents(
                "fraction denominators must be positive".into(),
            ));
        }
        let mut pair = Self::new(pn as f64 / pd as f64, qn as f64 / qd as f64)?;
        pair.q_fraction = Some((qn, qd));
        Ok(pair)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// p′ = p/(p−1), +∞ when p = 1.
    pub fn dual_p(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }

    /// Exact when constructed from fractions, otherwise within 1e−12.
    pub fn q_is_even_integer(&self) -> bool {
        if let Some((n, d)) = self.q_fraction {
            return n % d == 0 && (n / d) % 2 == 0;
        }
        let r = self.q.round();
        (self.q - r).abs() <= 1e-12 * self.q && (r as i64) % 2 == 0
    }

    /// For even integer q = 2k, the half-exponent k.
    pub fn q_even_half(&self) -> Option<i64> {
        if self.q_is_even_integer() {
            Some((self.q.round() as i64) / 2)
        } else {
            None
        }
    }
}
