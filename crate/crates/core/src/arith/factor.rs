//! Integer factorization: trial division to 10^6, then Pollard–Brent rho
//! under a step budget. Cofactors the budget could not split are returned,
//! never dropped.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Default number of rho iterations per cofactor, before giving up.
pub const DEFAULT_RHO_BUDGET: u64 = 2_000_000;

/// Environment variable overriding [`DEFAULT_RHO_BUDGET`].
pub const BUDGET_ENV: &str = "GOODRED_FACTOR_BUDGET";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Prime factors with multiplicity, ascending.
    #[serde(serialize_with = "crate::cli::report::ser_biguint_vec")]
    pub primes: Vec<BigUint>,
    /// Composite cofactors left unsplit when the budget ran out.
    #[serde(serialize_with = "crate::cli::report::ser_biguint_vec")]
    pub unfactored: Vec<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    /// Distinct primes, ascending.
    pub fn distinct(&self) -> Vec<BigUint> {
        let mut v = self.primes.clone();
        v.dedup();
        v
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_DIVISION_LIMIT))
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u32) -> Vec<u32> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Number of primes `<= n`.
pub fn prime_count(n: u64) -> usize {
    if n <= TRIAL_DIVISION_LIMIT as u64 {
        small_primes().partition_point(|&p| p as u64 <= n)
    } else {
        primes_up_to(n as u32).len()
    }
}

fn rho_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_RHO_BUDGET)
}

fn rem_u32(n: &BigUint, d: u32) -> u32 {
    let d = d as u128;
    let mut r: u128 = 0;
    for w in n.iter_u64_digits().rev() {
        r = ((r << 64) | w as u128) % d;
    }
    r as u32
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin; deterministic below 2^64, otherwise with 24 fixed bases
/// (error probability below 4^-24 for adversarial inputs, far lower in practice).
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(s) = n.to_u64() {
        return is_prime_u64(s);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    for &p in small_primes().iter().take(40) {
        if rem_u32(n, p) == 0 {
            return false;
        }
    }
    'witness: for &a in small_primes().iter().take(24) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard–Brent rho; `None` if no factor turned up within `budget` steps.
fn brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut steps = 0u64;
    let m = 128u64;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let batch = m.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    q = (q * absdiff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += batch;
                steps += batch;
                if steps > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // the batch overshot: redo it one step at a time
            loop {
                ys = f(&ys);
                g = absdiff(&x, &ys).gcd(n);
                steps += 1;
                if g != one || steps > budget {
                    break;
                }
            }
        }
        if g != one && &g != n {
            return Some(g);
        }
        if steps > budget {
            return None;
        }
    }
    None
}

/// Complete factorization of `|n|`, with the default (or environment) budget.
///
/// # Errors
/// `n = 0` is rejected.
pub fn factor_integer(n: &BigInt) -> Result<Factorization> {
    factor_with_budget(n, rho_budget())
}

pub fn factor_with_budget(n: &BigInt, budget: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut m = n.magnitude().clone();
    let mut primes = Vec::new();
    let mut unfactored = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        if let Some(s) = m.to_u64() {
            if (p as u64) * (p as u64) > s {
                break;
            }
        }
        while rem_u32(&m, p) == 0 {
            m /= p;
            primes.push(BigUint::from(p));
        }
    }
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    while let Some(c) = stack.pop() {
        if is_probable_prime(&c) {
            primes.push(c);
            continue;
        }
        match brent(&c, budget) {
            Some(g) => {
                let h = &c / &g;
                stack.push(g);
                stack.push(h);
            }
            None => unfactored.push(c),
        }
    }
    primes.sort();
    unfactored.sort();
    Ok(Factorization { primes, unfactored })
}

/// Distinct prime divisors below [`TRIAL_DIVISION_LIMIT`] only; the
/// remaining cofactor (possibly 1) is returned alongside.
pub fn small_prime_divisors(n: &BigInt) -> (Vec<u64>, BigUint) {
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    if m.is_zero() {
        return (out, m);
    }
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        if rem_u32(&m, p) == 0 {
            out.push(p as u64);
            while rem_u32(&m, p) == 0 {
                m /= p;
            }
        }
    }
    (out, m)
}

/// All positive divisors of a completely factored integer.
pub fn divisors(f: &Factorization) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut i = 0;
    while i < f.primes.len() {
        let p = &f.primes[i];
        let mut e = 0;
        while i < f.primes.len() && &f.primes[i] == p {
            e += 1;
            i += 1;
        }
        let base = out.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}
