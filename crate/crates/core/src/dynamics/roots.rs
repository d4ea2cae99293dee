//! Rational roots of binary forms by the rational root theorem.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::factor::{divisors, factor_integer};
use crate::arith::form::IntBinaryForm;
use crate::arith::modp::{Fp64, PrimeField};
use crate::error::{Error, Result};
use crate::proj::point::ProjPointQ;

/// Cap on the number of `(numerator, denominator)` candidate pairs.
pub const MAX_CANDIDATES: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSearch {
    pub roots: BTreeSet<ProjPointQ>,
    /// False when a coefficient could not be factored or the candidate cap hit.
    pub complete: bool,
}

const SIEVE_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

/// All roots of `A` in P^1(Q).
pub fn rational_roots(a: &IntBinaryForm) -> Result<RootSearch> {
    if a.is_zero() {
        return Err(Error::ZeroForm);
    }
    let mut roots = BTreeSet::new();
    if a.y_multiplicity() > 0 {
        roots.insert(ProjPointQ::infinity());
    }
    let chart = a.chart().primitive_part();
    let low = chart.coeffs().iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        roots.insert(ProjPointQ::integer(0));
    }
    let c: Vec<BigInt> = chart.coeffs()[low..].to_vec();
    if c.len() <= 1 {
        return Ok(RootSearch {
            roots,
            complete: true,
        });
    }
    let n = c.len() - 1;
    if n == 1 {
        // c0 + c1 x
        roots.insert(ProjPointQ::new(-&c[0], c[1].clone()).unwrap());
        return Ok(RootSearch {
            roots,
            complete: true,
        });
    }
    let fc = factor_integer(&c[0])?;
    let fl = factor_integer(&c[n])?;
    let complete = fc.is_complete() && fl.is_complete();
    let nums = divisors(&fc);
    let dens = divisors(&fl);
    if nums.len().saturating_mul(dens.len()) > MAX_CANDIDATES {
        return Ok(RootSearch {
            roots,
            complete: false,
        });
    }
    let sieves: Vec<(Fp64, Vec<u64>)> = SIEVE_PRIMES
        .iter()
        .map(|&q| {
            let k = Fp64::new_unchecked(q);
            let r = c.iter().map(|x| k.reduce(x)).collect();
            (k, r)
        })
        .collect();
    for num in &nums {
        for den in &dens {
            if !num.gcd(den).is_one() {
                continue;
            }
            for sign in [1i8, -1] {
                let x = if sign > 0 {
                    BigInt::from(num.clone())
                } else {
                    -BigInt::from(num.clone())
                };
                let y = BigInt::from(den.clone());
                if sieves.iter().any(|(k, r)| !k.is_zero(&eval_mod(k, r, &x, &y))) {
                    continue;
                }
                if eval_exact(&c, &x, &y).is_zero() {
                    roots.insert(ProjPointQ::new(x, y).unwrap());
                }
            }
        }
    }
    Ok(RootSearch { roots, complete })
}

/// `Σ c_i x^i y^(n-i)` mod q.
fn eval_mod(k: &Fp64, c: &[u64], x: &BigInt, y: &BigInt) -> u64 {
    let xr = k.reduce(x);
    let yr = k.reduce(y);
    let n = c.len() - 1;
    let mut ypows = vec![1u64; n + 1];
    for i in 1..=n {
        ypows[i] = k.mul(&ypows[i - 1], &yr);
    }
    let mut acc = 0u64;
    for i in (0..=n).rev() {
        acc = k.add(&k.mul(&acc, &xr), &k.mul(&c[i], &ypows[n - i]));
    }
    acc
}

fn eval_exact(c: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let n = c.len() - 1;
    let mut acc = BigInt::zero();
    let mut ypows = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        ypows[i] = &ypows[i - 1] * y;
    }
    for i in (0..=n).rev() {
        acc = acc * x + &c[i] * &ypows[n - i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(c: &[i64]) -> Vec<String> {
        rational_roots(&IntBinaryForm::from_i64(c))
            .unwrap()
            .roots
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn examples() {
        // -X^2 + XY = X(Y - X)
        assert_eq!(roots(&[-1, 1, 0]), vec!["0", "1"]);
        // (2X - Y)(3X + Y) Y = 6X^2Y - XY^2 - Y^3
        let mut r = roots(&[0, 6, -1, -1]);
        r.sort();
        assert_eq!(r, vec!["-1/3", "1/2", "inf"]);
        // x^2 + x + 1 has no rational roots
        assert!(roots(&[1, 1, 1]).is_empty());
        // x^3 - 2 has none either
        assert!(roots(&[1, 0, 0, -2]).is_empty());
    }
}
