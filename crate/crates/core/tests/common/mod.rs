//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use goodred::arith::modp::{Fp64, ProjPointFp};
use goodred::arith::qpoly::QPoly;
use goodred::arith::BigRat;
use goodred::arith::form::IntBinaryForm;
use goodred::proj::map::{new_map, RationalMap};
use goodred::proj::moebius::{conjugate, Moebius};
use goodred::proj::point::ProjPointQ;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn poly(ascending: &[i64]) -> RationalMap {
    RationalMap::polynomial(ascending).unwrap()
}

pub fn map(text: &str) -> RationalMap {
    goodred::cli::parse::parse_map(text).unwrap()
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// All points of P^1(F_p) in a fixed order.
pub fn points_mod(k: &Fp64) -> Vec<ProjPointFp<Fp64>> {
    let mut v: Vec<_> = (0..k.p()).map(|x| ProjPointFp::finite(k, x)).collect();
    v.push(ProjPointFp::infinity(k));
    v
}

/// `[x mod p : y mod p]` normalized by hand, without the library's reduction.
pub fn reduce_point(k: &Fp64, p: &ProjPointQ) -> (u64, u64) {
    let m = BigInt::from(k.p());
    let x = u64::try_from(p.x().mod_floor(&m)).unwrap();
    let y = u64::try_from(p.y().mod_floor(&m)).unwrap();
    if y == 0 {
        return (1, 0);
    }
    let q = k.p();
    let inv = (1..q).find(|i| i * y % q == 1).unwrap();
    (x * inv % q, 1)
}

/// True when the reductions of the given distinct points are pairwise distinct.
pub fn distinct_mod(k: &Fp64, pts: &BTreeSet<ProjPointQ>) -> bool {
    let reduced: BTreeSet<(u64, u64)> = pts.iter().map(|p| reduce_point(k, p)).collect();
    reduced.len() == pts.len()
}

/// A map built from prescribed rational critical points, with its
/// ramification and branch points known in advance.
#[derive(Clone, Debug)]
pub struct ConstructedMap {
    pub map: RationalMap,
    pub ramification: BTreeSet<ProjPointQ>,
    pub branch: BTreeSet<ProjPointQ>,
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

fn integrate(p: &QPoly) -> QPoly {
    let mut c = vec![BigRat::zero()];
    for (i, a) in p.coeffs().iter().enumerate() {
        c.push(a / BigRat::from_integer(BigInt::from(i as i64 + 1)));
    }
    QPoly::new(c)
}

fn eval_q(p: &QPoly, x: &BigRat) -> BigRat {
    p.coeffs().iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
}

fn random_moebius(rng: &mut ChaCha8Rng) -> Moebius {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        if e[0] * e[3] - e[1] * e[2] != 0 {
            return Moebius::from_i64(e[0], e[1], e[2], e[3]).unwrap();
        }
    }
}

/// `α ∘ f ∘ β` where `f' = c ∏ (x − r_i)^{m_i}` has 1 to 3 distinct rational
/// critical points. The ramification points are `β⁻¹(r_i)` and `β⁻¹(∞)`, the
/// branch points `α(f(r_i))` and `α(∞)`.
pub fn constructed_map(rng: &mut ChaCha8Rng) -> ConstructedMap {
    let k = rng.gen_range(1..=3);
    let mut roots: BTreeSet<BigRat> = BTreeSet::new();
    while roots.len() < k {
        roots.insert(rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    let mut deriv = QPoly::constant(rat(rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 }, 1));
    for r in &roots {
        let m = rng.gen_range(1..=2);
        let lin = QPoly::new(vec![-r.clone(), BigRat::one()]);
        deriv = deriv.mul(&lin.pow(m));
    }
    let f = integrate(&deriv).add(&QPoly::constant(rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))));
    let l = f.denominator_lcm();
    let base = RationalMap::from_polys(&f.to_zpoly_scaled(&l), &goodred::arith::poly::ZPoly::constant(l)).unwrap();
    let alpha = random_moebius(rng);
    let beta = random_moebius(rng);
    let map = conjugate(&alpha, &base, &beta).unwrap();
    let beta_inv = beta.inverse();
    let mut ramification: BTreeSet<ProjPointQ> =
        roots.iter().map(|r| beta_inv.apply(&ProjPointQ::from_rat(r))).collect();
    ramification.insert(beta_inv.apply(&ProjPointQ::infinity()));
    let mut branch: BTreeSet<ProjPointQ> = roots
        .iter()
        .map(|r| alpha.apply(&ProjPointQ::from_rat(&eval_q(&f, r))))
        .collect();
    branch.insert(alpha.apply(&ProjPointQ::infinity()));
    ConstructedMap {
        map,
        ramification,
        branch,
    }
}

pub fn constructed_corpus(n: usize, seed: u64) -> Vec<ConstructedMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| constructed_map(&mut rng)).collect()
}

/// Every degree-2 map with all six coefficients in `[-bound, bound]`, each
/// projective class once: the forms are kept only if already normalized.
pub fn for_each_degree2_map(bound: i64, mut f: impl FnMut(RationalMap)) {
    let side = 2 * bound + 1;
    for i in 0..side.pow(6) {
        let mut c = [0i64; 6];
        let mut r = i;
        for x in c.iter_mut() {
            *x = r % side - bound;
            r /= side;
        }
        let a = IntBinaryForm::from_i64(&c[..3]);
        let b = IntBinaryForm::from_i64(&c[3..]);
        let Ok(m) = new_map(a.clone(), b.clone()) else {
            continue;
        };
        if m.f() == &a && m.g() == &b {
            f(m);
        }
    }
}

/// Bracket for `ln 10` with width below `2^-bits`, from
/// `ln 10 = 6 atanh(1/3) + 2 atanh(1/9)` summed in exact rationals.
pub fn ln10_bracket(bits: u32) -> (BigRat, BigRat) {
    fn atanh_inv(q: i64, bits: u32) -> (BigRat, BigRat) {
        let x = BigRat::new(1.into(), q.into());
        let x2 = &x * &x;
        let eps = BigRat::new(1.into(), BigInt::one() << (bits + 8));
        let mut term = x.clone();
        let mut sum = BigRat::zero();
        let mut k = 0i64;
        loop {
            let t = &term / BigRat::from_integer((2 * k + 1).into());
            sum += &t;
            term *= &x2;
            k += 1;
            // the tail is below term / (1 - x^2)
            let tail = &term / (BigRat::one() - &x2);
            if tail < eps {
                return (sum.clone(), sum + tail);
            }
        }
    }
    let (a_lo, a_hi) = atanh_inv(3, bits);
    let (b_lo, b_hi) = atanh_inv(9, bits);
    let six = BigRat::from_integer(6.into());
    let two = BigRat::from_integer(2.into());
    (&six * a_lo + &two * b_lo, six * a_hi + two * b_hi)
}

pub fn ceil(r: &BigRat) -> BigInt {
    r.ceil().to_integer()
}
