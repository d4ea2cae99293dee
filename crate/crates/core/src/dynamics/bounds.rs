//! Uniform bounds on periods and on the number of preperiodic points for
//! maps with good reduction outside a set of `t` places.
//!
//! The second constant is larger than `e^(10^12)`, so it is only ever
//! handled through its logarithm, and the final bound through `ln ln`.

use serde::Serialize;

use crate::arith::factor::prime_count;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    /// Number of bad places.
    pub t: u64,
    /// Degree of the number field.
    #[serde(rename = "D")]
    pub field_degree: u64,
    /// Degree of the map.
    pub d: u64,
}

impl BoundSpec {
    pub fn new(t: u64, field_degree: u64, d: u64) -> Result<Self> {
        if t < 1 || field_degree < 1 || d < 2 {
            return Err(Error::InvalidArgument(
                "need t >= 1, D >= 1 and d >= 2".into(),
            ));
        }
        Ok(BoundSpec { t, field_degree, d })
    }
}

/// `⌈(12(t+1) ln(5(t+1)))^(4D)⌉`, rounded up only at the end.
pub fn ms_bound(t: u64, field_degree: u64) -> f64 {
    let s = (t + 1) as f64;
    let base = 12.0 * s * (5.0 * s).ln();
    base.powf(4.0 * field_degree as f64).ceil()
}

/// `t · (8 ln(t+1) + 8 ln ln(5(t+1)))`: the part of [`canci_log_bound`]
/// beyond `t · 10^12`, kept separate because adding it to `10^12` in
/// double precision leaves only about four decimals.
pub fn canci_log_correction(t: u64) -> f64 {
    let s = (t + 1) as f64;
    t as f64 * (8.0 * s.ln() + 8.0 * (5.0 * s).ln().ln())
}

/// Natural logarithm of `[e^(10^12) (t+1)^8 (ln 5(t+1))^8]^t`.
pub fn canci_log_bound(t: u64) -> f64 {
    t as f64 * 1e12 + canci_log_correction(t)
}

/// `ln(n!)` by Stirling's series; exact enough for any `n ≥ 1` here.
pub fn ln_factorial(n: f64) -> f64 {
    if n < 2.0 {
        return 0.0;
    }
    let tau = 2.0 * std::f64::consts::PI;
    n * n.ln() - n + 0.5 * (tau * n).ln() + 1.0 / (12.0 * n) - 1.0 / (360.0 * n * n * n)
}

/// `C = b!·d^c·c` (up to the `+1` in `b! + 1`, invisible at this scale),
/// reported through the logarithms of the logarithms of its three factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryBound {
    pub spec: BoundSpec,
    /// `t` plus one place for each prime `≤ d` in each of the `D` embeddings.
    pub enlarged_t: u64,
    /// The period bound `b` at the enlarged `t`.
    pub period_bound: f64,
    /// `ln(b!)`.
    pub ln_b_factorial: f64,
    /// `ln c`.
    pub ln_c: f64,
    /// `ln(ln(b!))`, `ln(c · ln d)` and `ln(ln c)`.
    pub ln_ln_terms: [f64; 3],
    /// `ln ln C`.
    pub ln_ln_c_total: f64,
    /// Index into `ln_ln_terms` of the largest addend.
    pub dominant: usize,
}

pub fn corollary_log_c(spec: &BoundSpec) -> CorollaryBound {
    let enlarged_t = spec.t + prime_count(spec.d) as u64 * spec.field_degree;
    let b = ms_bound(enlarged_t, spec.field_degree);
    let ln_b_factorial = ln_factorial(b);
    let ln_c = canci_log_bound(enlarged_t);
    let terms = [
        ln_b_factorial.ln(),
        ln_c + (spec.d as f64).ln().ln(),
        ln_c.ln(),
    ];
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let total = max + terms.iter().map(|x| (x - max).exp()).sum::<f64>().ln();
    let dominant = terms
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    CorollaryBound {
        spec: *spec,
        enlarged_t,
        period_bound: b,
        ln_b_factorial,
        ln_c,
        ln_ln_terms: terms,
        ln_ln_c_total: total,
        dominant,
    }
}
