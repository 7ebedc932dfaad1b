//! Exact combinatorial side of the toolkit: binomial weights, Bezout
//! thresholds, resonance-set enumeration, and the truncated-sum sign
//! certificate for c₁ + c₋₁ built from them.

pub mod bezout;
pub mod binomial;
pub mod certificate;
pub mod lambda;
pub mod params;

pub use bezout::{bezout_pair, BezoutPair};
pub use binomial::{binomial_seq, BinomialSeq};
pub use certificate::{
    c1_certificate, c1_sum, verify_sign_structure, Certificate, CertificateVerdict, SignStructure,
    MAX_BOX_DEGREE,
};
pub use lambda::{
    lambda_set, verify_bezout_lemma, verify_parity_lemma, LambdaSet, LambdaSolution, LemmaReport,
};
pub use params::{generate_params, CounterexampleParams, Family};
