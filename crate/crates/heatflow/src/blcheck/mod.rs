//! Exact verification of the scaling condition for the multilinear system
//! behind the even-exponent inequality.
//!
//! For q = 2k the relevant system on ℝ^{(2k−1)d} has 2k surjections: the
//! 2k−1 block coordinates B_j = e_jᵀ ⊗ I_d and one alternating-sum map
//! B_{2k} = sᵀ ⊗ I_d with s = (+1, −1, +1, …), all carrying the common
//! exponent (2k−1)/(2k). Geometric extremality reduces to the matrix
//! identities checked here, and every one of them is a rational identity,
//! so the verification is exact: residuals are rationals that must be 0.

mod ratmat;

pub use ratmat::RatMat;

use num_rational::Rational64;
use serde::Serialize;

use crate::{Error, Result};

fn rat(n: i64) -> Rational64 {
    Rational64::new(n, 1)
}

/// The q = 2k system: maps, common exponent, and the associated quadratic
/// form M = c · Σ_j B_jᵀ B_j with its exact inverse.
#[derive(Clone, Debug)]
pub struct BlSystem {
    pub k: usize,
    pub d: usize,
    /// Common exponent c = (2k−1)/(2k).
    pub exponent: Rational64,
    /// 2k maps, each d × (2k−1)d.
    pub maps: Vec<RatMat>,
    pub gram: RatMat,
    pub gram_inv: RatMat,
}

const MAX_K: usize = 5;
const MAX_D: usize = 3;

/// Sign vector s = (+1, −1, +1, …) of length 2k−1.
fn signs(k: usize) -> Vec<i64> {
    (0..2 * k - 1).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()
}

pub fn build_system(k: usize, d: usize) -> Result<BlSystem> {
    if k == 0 || k > MAX_K {
        return Err(Error::InvalidExponents(format!(
            "system order k = {k} out of range 1..={MAX_K}"
        )));
    }
    if d == 0 || d > MAX_D {
        return Err(Error::InvalidExponents(format!(
            "dimension d = {d} out of range 1..={MAX_D}"
        )));
    }
    let n = 2 * k - 1;
    let nd = n * d;
    let s = signs(k);

    let mut maps = Vec::with_capacity(2 * k);
    for j in 0..n {
        maps.push(RatMat::from_fn(d, nd, |r, c| {
            if c == j * d + r {
                rat(1)
            } else {
                rat(0)
            }
        }));
    }
    maps.push(RatMat::from_fn(d, nd, |r, c| {
        let (block, inner) = (c / d, c % d);
        if inner == r {
            rat(s[block])
        } else {
            rat(0)
        }
    }));

    let exponent = Rational64::new(n as i64, 2 * k as i64);
    let mut sum = RatMat::zeros(nd, nd);
    for b in &maps {
        sum = sum.add(&b.transpose().mul(b));
    }
    let gram = sum.scale(exponent);
    // Closed form for the inverse: (2k·I − ssᵀ ⊗ I_d)/(2k−1).
    let gram_inv = RatMat::from_fn(nd, nd, |r, c| {
        let (br, ir) = (r / d, r % d);
        let (bc, ic) = (c / d, c % d);
        if ir != ic {
            return rat(0);
        }
        let mut v = rat(-s[br] * s[bc]);
        if r == c {
            v += rat(2 * k as i64);
        }
        v / rat(n as i64)
    });

    Ok(BlSystem {
        k,
        d,
        exponent,
        maps,
        gram,
        gram_inv,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlCheckRow {
    pub name: String,
    /// Exact residual (largest |entry| of the difference), as a rational
    /// in lowest terms. Passing checks print "0".
    pub residual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlReport {
    pub k: usize,
    pub d: usize,
    pub exponent: String,
    pub checks: Vec<BlCheckRow>,
}

impl BlReport {
    pub fn pass_all(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Run every scaling-condition identity for the order-k system in
/// dimension d and report exact residuals.
pub fn verify_hypotheses(k: usize, d: usize) -> Result<BlReport> {
    let sys = build_system(k, d)?;
    let n = 2 * k - 1;
    let nd = n * d;
    let s = signs(k);
    let mut checks = Vec::new();

    // 1. The quadratic form matches its closed form c·(I + ssᵀ ⊗ I_d).
    let closed = RatMat::from_fn(nd, nd, |r, c| {
        let (br, ir) = (r / d, r % d);
        let (bc, ic) = (c / d, c % d);
        if ir != ic {
            return rat(0);
        }
        let mut v = rat(s[br] * s[bc]);
        if r == c {
            v += rat(1);
        }
        v * sys.exponent
    });
    let res = sys.gram.sub(&closed).max_abs();
    checks.push(BlCheckRow {
        name: "quadratic-form-closed-form".into(),
        residual: res.to_string(),
        pass: res == rat(0),
    });

    // 2. The claimed inverse really inverts it.
    let res = sys.gram.mul(&sys.gram_inv).sub(&RatMat::identity(nd)).max_abs();
    checks.push(BlCheckRow {
        name: "inverse-identity".into(),
        residual: res.to_string(),
        pass: res == rat(0),
    });

    // 3. Geometric extremality: B_j M⁻¹ B_jᵀ = I_d for every map,
    // including the alternating-sum one.
    for (idx, b) in sys.maps.iter().enumerate() {
        let res = b
            .mul(&sys.gram_inv)
            .mul(&b.transpose())
            .sub(&RatMat::identity(d))
            .max_abs();
        checks.push(BlCheckRow {
            name: format!("scaling-map-{}", idx + 1),
            residual: res.to_string(),
            pass: res == rat(0),
        });
    }

    Ok(BlReport {
        k,
        d,
        exponent: sys.exponent.to_string(),
        checks,
    })
}
