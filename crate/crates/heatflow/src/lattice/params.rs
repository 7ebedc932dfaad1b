//! Ready-made three-atom configurations δ₀ + r·δ_m + r·δ_n whose first
//! Fourier coefficient goes negative for non-even q.
//!
//! Two parameter families are provided. Both choose frequencies (m, n)
//! adapted to q so that the first resonances landing on frequency ±1 carry
//! binomial weights a_k a_{k′} of opposite sign:
//!
//! * family A — the smallest example: with k the least integer > q/2 + 1,
//!   take (m, n) = (2k+1, 2k+3), giving (α*, β*) = (k+1, k);
//! * family B — widely separated frequencies: with k₀ the least even
//!   integer > q/2 + 1, take m = 3k₀+1, n = 2m+3, giving
//!   (α*, β*) = (2k₀+1, k₀).
//!
//! In both cases every Λ_{k,k′} with a positive-product weight a_k a_{k′}
//! is empty (k, k′ both below the sign change hit the Bezout/parity
//! thresholds), while the first nonempty set appears exactly at
//! (k, k′) = (α*, β*) with a_{α*} a_{β*} < 0. The closed forms for
//! (α*, β*) are not trusted: the constructor recomputes them from the
//! extended Euclid data and rejects any mismatch.

use std::str::FromStr;

use serde::Serialize;

use crate::lattice::bezout::bezout_pair;
use crate::measure::DiscreteMeasure;
use crate::{Error, Result};

/// Which construction to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    B,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            other => Err(Error::InvalidMeasure(format!(
                "unknown family {other:?}, expected A or B"
            ))),
        }
    }
}

/// A fully determined counterexample configuration.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleParams {
    pub q: f64,
    pub family: Family,
    /// k for family A, k₀ for family B.
    pub k_anchor: i64,
    pub m: i64,
    pub n: i64,
    pub r: f64,
    pub alpha_star: i64,
    pub beta_star: i64,
}

/// Smallest integer strictly greater than x.
fn smallest_int_gt(x: f64) -> i64 {
    (x.floor() as i64) + 1
}

/// Default satellite weights; both keep 2r < 1 (geometric tails converge)
/// with room to spare.
fn default_r(family: Family) -> f64 {
    match family {
        Family::A => 0.4,
        Family::B => 0.25,
    }
}

/// Build the configuration for a given non-even q ≥ 2.
///
/// `r` overrides the default satellite weight; it must lie in (0, 1/2).
pub fn generate_params(q: f64, family: Family, r: Option<f64>) -> Result<CounterexampleParams> {
    if !(q.is_finite() && q >= 2.0) {
        return Err(Error::InvalidExponents(format!("q = {q} must be >= 2")));
    }
    let rounded = q.round();
    if (q - rounded).abs() <= 1e-12 * q.max(1.0) && (rounded as i64) % 2 == 0 {
        return Err(Error::EvenIntegerQ { q });
    }
    let r = r.unwrap_or_else(|| default_r(family));
    if !(r.is_finite() && 0.0 < r && r < 0.5) {
        return Err(Error::InvalidMeasure(format!(
            "satellite weight r = {r} must lie in (0, 1/2)"
        )));
    }

    let threshold = q / 2.0 + 1.0;
    let (k_anchor, m, n, expect_stars) = match family {
        Family::A => {
            let k = smallest_int_gt(threshold);
            (k, 2 * k + 1, 2 * k + 3, (k + 1, k))
        }
        Family::B => {
            let mut k0 = smallest_int_gt(threshold);
            if k0 % 2 != 0 {
                k0 += 1;
            }
            let m = 3 * k0 + 1;
            (k0, m, 2 * m + 3, (2 * k0 + 1, k0))
        }
    };

    // The closed forms are cross-checked against extended Euclid on every
    // construction; a mismatch would mean the family tables are wrong.
    let stars = bezout_pair(m, n)?.stars();
    assert_eq!(
        stars, expect_stars,
        "closed-form (alpha*, beta*) disagrees with Euclid for (m, n) = ({m}, {n})"
    );

    Ok(CounterexampleParams {
        q,
        family,
        k_anchor,
        m,
        n,
        r,
        alpha_star: stars.0,
        beta_star: stars.1,
    })
}

impl CounterexampleParams {
    /// The measure δ₀ + r·δ_m + r·δ_n.
    pub fn measure(&self) -> DiscreteMeasure {
        DiscreteMeasure::line(&[(0.0, 1.0), (self.m as f64, self.r), (self.n as f64, self.r)])
            .expect("family measures are always valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: f64, family: Family) -> CounterexampleParams {
        generate_params(q, family, None).unwrap()
    }

    #[test]
    fn family_a_tables() {
        // (q, k, m, n, alpha*, beta*)
        let expect = [
            (2.5, 3, 7, 9, 4, 3),
            (3.0, 3, 7, 9, 4, 3),
            (4.5, 4, 9, 11, 5, 4),
            (5.0, 4, 9, 11, 5, 4),
            (5.5, 4, 9, 11, 5, 4),
            (6.3, 5, 11, 13, 6, 5),
        ];
        for (q, k, m, n, a, b) in expect {
            let p = params(q, Family::A);
            assert_eq!(
                (p.k_anchor, p.m, p.n, p.alpha_star, p.beta_star),
                (k, m, n, a, b),
                "q = {q}"
            );
            assert_eq!(p.r, 0.4);
        }
    }

    #[test]
    fn family_b_tables() {
        let expect = [
            (2.5, 4, 13, 29, 9, 4),
            (3.0, 4, 13, 29, 9, 4),
            (4.5, 4, 13, 29, 9, 4),
            (5.0, 4, 13, 29, 9, 4),
            (5.5, 4, 13, 29, 9, 4),
            (6.3, 6, 19, 41, 13, 6),
        ];
        for (q, k0, m, n, a, b) in expect {
            let p = params(q, Family::B);
            assert_eq!(
                (p.k_anchor, p.m, p.n, p.alpha_star, p.beta_star),
                (k0, m, n, a, b),
                "q = {q}"
            );
            assert_eq!(p.r, 0.25);
        }
    }

    #[test]
    fn strictly_greater_semantics_at_integers() {
        // q = 4.0 would give threshold 3.0 and k = 4, but even q is
        // rejected before that point; q = 5 exercises an integer q.
        let p = params(5.0, Family::A);
        assert_eq!(p.k_anchor, 4);
        // Direct check of the helper.
        assert_eq!(smallest_int_gt(2.5), 3);
        assert_eq!(smallest_int_gt(3.0), 4);
    }

    #[test]
    fn even_q_is_rejected() {
        for q in [2.0, 4.0, 6.0] {
            for family in [Family::A, Family::B] {
                assert!(matches!(
                    generate_params(q, family, None),
                    Err(Error::EvenIntegerQ { .. })
                ));
            }
        }
        // ... with an exact tolerance, not a sloppy one.
        assert!(generate_params(4.000001, Family::A, None).is_ok());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(generate_params(1.5, Family::A, None).is_err());
        assert!(generate_params(f64::NAN, Family::A, None).is_err());
        assert!(generate_params(3.0, Family::A, Some(0.5)).is_err());
        assert!(generate_params(3.0, Family::A, Some(0.0)).is_err());
        assert!(generate_params(3.0, Family::A, Some(-0.1)).is_err());
    }

    #[test]
    fn measure_shape() {
        let p = params(3.0, Family::B);
        let mu = p.measure();
        assert_eq!(mu.num_atoms(), 3);
        assert!(mu.is_integer_supported());
        assert_eq!(mu.total_mass(), 1.5);
        let xs: Vec<f64> = mu.atoms().iter().map(|a| a.x[0]).collect();
        assert_eq!(xs, vec![0.0, 13.0, 29.0]);
    }

    #[test]
    fn family_parse() {
        assert_eq!("A".parse::<Family>().unwrap(), Family::A);
        assert_eq!("b".parse::<Family>().unwrap(), Family::B);
        assert!("C".parse::<Family>().is_err());
    }
}
