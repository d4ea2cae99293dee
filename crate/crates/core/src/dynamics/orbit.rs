use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::BigRat;
use crate::proj::map::RationalMap;
use crate::proj::point::ProjPointQ;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    /// `P, Φ(P), Φ²(P), …` up to the first repeat or the budget.
    pub points: Vec<ProjPointQ>,
    pub tail_length: usize,
    /// Zero when the budget ran out first.
    pub cycle_length: usize,
    pub budget_exceeded: bool,
}

/// Iterates until the orbit closes, `max_steps` points have been produced,
/// or a coordinate exceeds `max_bits` bits.
pub fn orbit(phi: &RationalMap, start: &ProjPointQ, max_steps: usize, max_bits: u64) -> OrbitResult {
    let mut seen: HashMap<ProjPointQ, usize> = HashMap::new();
    let mut points = vec![start.clone()];
    seen.insert(start.clone(), 0);
    loop {
        let last = points.last().unwrap();
        if points.len() >= max_steps.max(1) || last.bits() > max_bits {
            return OrbitResult {
                points,
                tail_length: 0,
                cycle_length: 0,
                budget_exceeded: true,
            };
        }
        let next = phi.evaluate(last);
        if let Some(&i) = seen.get(&next) {
            let len = points.len();
            return OrbitResult {
                points,
                tail_length: i,
                cycle_length: len - i,
                budget_exceeded: false,
            };
        }
        seen.insert(next.clone(), points.len());
        points.push(next);
    }
}

/// The iterates `Φ^i(1/2)` of `x ↦ x(x − 1)` for `1 ≤ i ≤ i_max`.
pub fn half_orbit_of_product_map(i_max: usize) -> Vec<BigRat> {
    let half = BigRat::new(1.into(), 2.into());
    let mut out = Vec::with_capacity(i_max);
    let mut x = half;
    for _ in 0..i_max {
        x = &x * (&x - BigRat::from_integer(1.into()));
        out.push(x.clone());
    }
    out
}

/// Checks that `Φ^i(1/2) = odd / 2^{k_i}` with `k_1 = 2` and `k_{i+1} = 2 k_i`
/// for `Φ(x) = x(x − 1)`, so the 2-adic valuation of the orbit is `−2^i`.
pub fn two_adic_escape_check(i_max: usize) -> bool {
    if i_max == 0 {
        return false;
    }
    let mut k: u64 = 2;
    for x in half_orbit_of_product_map(i_max) {
        if x.numer().is_even() || x.denom() != &(BigInt::from(1) << k) {
            return false;
        }
        k *= 2;
    }
    true
}
