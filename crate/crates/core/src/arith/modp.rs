//! Arithmetic over F_p and binary forms reduced mod p.
//!
//! Two field implementations share one generic polynomial layer: [`Fp64`]
//! for primes that fit a machine word and [`FpBig`] for the occasional huge
//! prime that falls out of a resultant factorization.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::form::IntBinaryForm;
use crate::error::{Error, Result};

/// A prime field F_p.
pub trait PrimeField: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> BigUint;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn reduce(&self, n: &BigInt) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_biguint(&self, a: &Self::Elem) -> BigUint;
    /// Whether `p` divides the machine integer `n`.
    fn divides(&self, n: u64) -> bool;
    /// `Some(p)` when the characteristic fits in a `u64`.
    fn small_char(&self) -> Option<u64>;
}

/// F_p for `p < 2^64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp64 {
    p: u64,
}

impl Fp64 {
    /// # Panics
    /// If `p` is not prime.
    pub fn new(p: u64) -> Self {
        assert!(
            crate::arith::factor::is_prime_u64(p),
            "{p} is not prime"
        );
        Fp64 { p }
    }

    #[doc(hidden)]
    pub fn new_unchecked(p: u64) -> Self {
        Fp64 { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// All points of P^1(F_p), `∞` last.
    pub fn projective_points(&self) -> Vec<ProjPointFp<Fp64>> {
        let mut v: Vec<_> = (0..self.p)
            .map(|x| ProjPointFp::finite(self, x))
            .collect();
        v.push(ProjPointFp::infinity(self));
        v
    }
}

impl PrimeField for Fp64 {
    type Elem = u64;

    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn reduce(&self, n: &BigInt) -> u64 {
        let mut r: u128 = 0;
        for d in n.magnitude().iter_u64_digits().rev() {
            r = ((r << 64) | d as u128) % self.p as u128;
        }
        let r = r as u64;
        if n.sign() == Sign::Minus && r != 0 {
            self.p - r
        } else {
            r
        }
    }
    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i128
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_biguint(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
    fn divides(&self, n: u64) -> bool {
        n.is_multiple_of(self.p)
    }
    fn small_char(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// F_p for arbitrary-size `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpBig {
    p: BigInt,
}

impl FpBig {
    #[doc(hidden)]
    pub fn new_unchecked(p: BigUint) -> Self {
        FpBig { p: BigInt::from(p) }
    }
}

impl PrimeField for FpBig {
    type Elem = BigInt;

    fn characteristic(&self) -> BigUint {
        self.p.magnitude().clone()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn reduce(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.p)
    }
    fn from_u64(&self, n: u64) -> BigInt {
        BigInt::from(n).mod_floor(&self.p)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.p)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a - b).mod_floor(&self.p)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.p)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        (-a).mod_floor(&self.p)
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.is_zero() {
            return None;
        }
        let e = a.extended_gcd(&self.p);
        Some(e.x.mod_floor(&self.p))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn to_biguint(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn divides(&self, n: u64) -> bool {
        (BigInt::from(n) % &self.p).is_zero()
    }
    fn small_char(&self) -> Option<u64> {
        self.p.to_u64()
    }
}

/// Dense polynomial over F_p, ascending, no trailing zeros.
#[derive(Clone, Debug)]
pub(crate) struct FpPoly<K: PrimeField> {
    pub(crate) c: Vec<K::Elem>,
}

impl<K: PrimeField> FpPoly<K> {
    pub(crate) fn new(k: &K, mut c: Vec<K::Elem>) -> Self {
        while c.last().is_some_and(|x| k.is_zero(x)) {
            c.pop();
        }
        FpPoly { c }
    }

    pub(crate) fn zero() -> Self {
        FpPoly { c: Vec::new() }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn derivative(&self, k: &K) -> Self {
        Self::new(
            k,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| k.mul(a, &k.from_u64(i as u64)))
                .collect(),
        )
    }

    pub(crate) fn mul(&self, k: &K, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        Self::new(k, v)
    }

    pub(crate) fn sub(&self, k: &K, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = k.zero();
        Self::new(
            k,
            (0..n)
                .map(|i| k.sub(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub(crate) fn make_monic(&self, k: &K) -> Self {
        match self.c.last() {
            None => Self::zero(),
            Some(l) => {
                let inv = k.inv(l).unwrap();
                FpPoly {
                    c: self.c.iter().map(|a| k.mul(a, &inv)).collect(),
                }
            }
        }
    }

    pub(crate) fn divrem(&self, k: &K, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = k.inv(b.c.last().unwrap()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= db {
            return (Self::zero(), Self::new(k, r));
        }
        let mut q = vec![k.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let coef = k.mul(&r[i + db], &inv);
            if k.is_zero(&coef) {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&coef, bj));
            }
            q[i] = coef;
        }
        r.truncate(db);
        (Self::new(k, q), Self::new(k, r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub(crate) fn gcd(&self, k: &K, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(k, &b);
            a = b;
            b = r;
        }
        a.make_monic(k)
    }
}

/// A binary form with coefficients in F_p; coefficient `i` belongs to `X^(n-i) Y^i`.
#[derive(Clone, Debug)]
pub struct ModPForm<K: PrimeField> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: PrimeField> PartialEq for ModPForm<K> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.characteristic() == other.field.characteristic()
    }
}

impl<K: PrimeField> ModPForm<K> {
    pub fn new(field: &K, coeffs: Vec<K::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        ModPForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_u64(field: &K, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub(crate) fn zero(field: &K, degree: usize) -> Self {
        Self::new(field, vec![field.zero(); degree + 1])
    }

    /// Coefficientwise reduction without any primitivity check.
    pub(crate) fn reduce_unchecked(a: &IntBinaryForm, field: &K) -> Self {
        Self::new(field, a.coeffs().iter().map(|c| field.reduce(c)).collect())
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn residues(&self) -> Vec<BigUint> {
        self.coeffs.iter().map(|c| self.field.to_biguint(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn y_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| self.field.is_zero(c))
            .count()
    }

    pub(crate) fn chart(&self) -> FpPoly<K> {
        FpPoly::new(&self.field, self.coeffs.iter().rev().cloned().collect())
    }

    pub(crate) fn from_chart(field: &K, p: &FpPoly<K>, degree: usize) -> Self {
        let z = field.zero();
        Self::new(
            field,
            (0..=degree)
                .map(|i| p.c.get(degree - i).cloned().unwrap_or_else(|| z.clone()))
                .collect(),
        )
    }

    /// Gcd as forms, normalized so its first nonzero coefficient is 1.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let k = &self.field;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(Error::ZeroForm),
            (true, false) => Ok(other.normalized()),
            (false, true) => Ok(self.normalized()),
            (false, false) => {
                let m = self.y_multiplicity().min(other.y_multiplicity());
                let g = self.chart().gcd(k, &other.chart());
                let deg = g.degree().unwrap_or(0) + m;
                Ok(Self::from_chart(k, &g, deg))
            }
        }
    }

    fn normalized(&self) -> Self {
        let k = &self.field;
        match self.coeffs.iter().find(|c| !k.is_zero(c)) {
            None => self.clone(),
            Some(l) => {
                let inv = k.inv(l).unwrap();
                Self::new(k, self.coeffs.iter().map(|a| k.mul(a, &inv)).collect())
            }
        }
    }

    /// Exact quotient of forms over F_p. The zero form divided by anything
    /// nonzero is the zero form of the difference degree.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let k = &self.field;
        if other.is_zero() || other.degree() > self.degree() {
            return None;
        }
        let deg = self.degree() - other.degree();
        if self.is_zero() {
            return Some(Self::zero(k, deg));
        }
        if other.y_multiplicity() > self.y_multiplicity() {
            return None;
        }
        let (q, r) = self.chart().divrem(k, &other.chart());
        if !r.is_zero() {
            return None;
        }
        Some(Self::from_chart(k, &q, deg))
    }

    pub fn eval(&self, x: &K::Elem, y: &K::Elem) -> K::Elem {
        let k = &self.field;
        let n = self.degree();
        let mut acc = k.zero();
        let mut ypow = k.one();
        let mut terms = Vec::with_capacity(n + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            terms.push(k.mul(c, &ypow));
            if i < n {
                ypow = k.mul(&ypow, y);
            }
        }
        for t in terms {
            acc = k.add(&k.mul(&acc, x), &t);
        }
        acc
    }

    /// Whether every nonzero coefficient sits at an index divisible by `p`,
    /// i.e. the form lies in F_p[X^p, Y^p] once its degree is a multiple of `p`.
    pub(crate) fn is_in_frobenius_image(&self) -> bool {
        let k = &self.field;
        let n = self.degree();
        self.coeffs.iter().enumerate().all(|(i, c)| {
            k.is_zero(c) || (exponent_divisible(k, i) && exponent_divisible(k, n - i))
        })
    }

    /// Extracts `R` with `R^p = self`, using that Frobenius fixes F_p.
    pub(crate) fn pth_root(&self) -> Option<Self> {
        let k = &self.field;
        if !self.is_in_frobenius_image() {
            return None;
        }
        let p = k.small_char()? as usize;
        let n = self.degree();
        if !n.is_multiple_of(p) {
            return None;
        }
        Some(Self::new(
            k,
            (0..=n / p).map(|j| self.coeffs[j * p].clone()).collect(),
        ))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let k = &self.field;
        let mut v = vec![k.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        Self::new(k, v)
    }

    pub(crate) fn pow(&self, e: usize) -> Self {
        let mut acc = Self::new(&self.field, vec![self.field.one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

fn exponent_divisible<K: PrimeField>(k: &K, e: usize) -> bool {
    e == 0 || k.divides(e as u64)
}

/// Reduces a primitive integer form coefficientwise.
pub fn reduce_form<K: PrimeField>(a: &IntBinaryForm, field: &K) -> Result<ModPForm<K>> {
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(ModPForm::reduce_unchecked(a, field))
}

/// True iff the form has no repeated root in P^1 over the algebraic closure
/// of F_p, the root at infinity counted by its `Y` multiplicity.
pub fn squarefree_mod_p<K: PrimeField>(a: &ModPForm<K>) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroForm);
    }
    if a.y_multiplicity() > 1 {
        return Ok(false);
    }
    let k = a.field();
    let chart = a.chart();
    if chart.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    let g = chart.gcd(k, &chart.derivative(k));
    Ok(g.degree() == Some(0))
}

/// Whether two nonzero forms over F_p share a root in P^1 at their formal
/// degrees, i.e. whether their resultant vanishes mod p.
pub(crate) fn share_root<K: PrimeField>(a: &ModPForm<K>, b: &ModPForm<K>) -> bool {
    match a.gcd(b) {
        Ok(g) => g.degree() > 0,
        Err(_) => true,
    }
}

/// A point of P^1(F_p), normalized so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPointFp<K: PrimeField> {
    pub x: K::Elem,
    pub y: K::Elem,
}

impl<K: PrimeField> ProjPointFp<K> {
    pub fn new(field: &K, x: K::Elem, y: K::Elem) -> Option<Self> {
        if field.is_zero(&y) {
            if field.is_zero(&x) {
                return None;
            }
            return Some(Self::infinity(field));
        }
        let inv = field.inv(&y).unwrap();
        Some(ProjPointFp {
            x: field.mul(&x, &inv),
            y: field.one(),
        })
    }

    pub fn finite(field: &K, x: u64) -> Self {
        ProjPointFp {
            x: field.from_u64(x),
            y: field.one(),
        }
    }

    pub fn infinity(field: &K) -> Self {
        ProjPointFp {
            x: field.one(),
            y: field.zero(),
        }
    }

    pub fn is_infinity(&self, field: &K) -> bool {
        field.is_zero(&self.y)
    }
}

/// A rational prime, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(n: BigUint) -> Result<Self> {
        if crate::arith::factor::is_probable_prime(&n) {
            Ok(Prime(n))
        } else {
            Err(Error::NotPrime(n.to_string()))
        }
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        Self::new(BigUint::from(n))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Whether `p` divides `n`.
    pub fn divides(&self, n: &BigInt) -> bool {
        (n.magnitude() % &self.0).is_zero()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl serde::Serialize for Prime {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Runs `$body` with `$k` bound to `&F_p`, picking the word-size field when
/// `p` fits in a `u64`.
#[macro_export]
macro_rules! with_field {
    ($p:expr, |$k:ident| $body:expr) => {{
        let prime: &$crate::arith::modp::Prime = $p;
        match prime.as_u64() {
            Some(small) => {
                let $k = &$crate::arith::modp::Fp64::new_unchecked(small);
                $body
            }
            None => {
                let $k = &$crate::arith::modp::FpBig::new_unchecked(prime.value().clone());
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: &[i64]) -> IntBinaryForm {
        IntBinaryForm::from_i64(c)
    }

    #[test]
    fn reduce_examples() {
        let f3 = Fp64::new(3);
        let r = reduce_form(&f(&[-3, 4, 0, 0, 0]), &f3).unwrap();
        assert_eq!(r, ModPForm::from_u64(&f3, &[0, 1, 0, 0, 0]));
        let f5 = Fp64::new(5);
        assert_eq!(
            reduce_form(&f(&[1, -1]), &f5).unwrap(),
            ModPForm::from_u64(&f5, &[1, 4])
        );
        let f2 = Fp64::new(2);
        assert_eq!(
            reduce_form(&f(&[0, 2, -1]), &f2).unwrap(),
            ModPForm::from_u64(&f2, &[0, 0, 1])
        );
        assert_eq!(reduce_form(&f(&[2, 4]), &f2), Err(Error::NotPrimitive));
    }

    #[test]
    fn squarefree_examples() {
        let f3 = Fp64::new(3);
        // XY(X - Y)
        let a = reduce_form(&f(&[0, 1, -1, 0]), &f3).unwrap();
        assert!(squarefree_mod_p(&a).unwrap());
        let f2 = Fp64::new(2);
        assert!(!squarefree_mod_p(&ModPForm::from_u64(&f2, &[0, 0, 1])).unwrap());
        let b = reduce_form(&f(&[0, 2, -1]), &f2).unwrap();
        assert!(!squarefree_mod_p(&b).unwrap());
        assert_eq!(
            squarefree_mod_p(&ModPForm::from_u64(&f2, &[0, 0])),
            Err(Error::ZeroForm)
        );
        // x^2 + 1 over F_2 is (x + 1)^2
        assert!(!squarefree_mod_p(&ModPForm::from_u64(&f2, &[1, 0, 1])).unwrap());
    }

    #[test]
    fn big_field_agrees_with_small_field() {
        let small = Fp64::new(1_000_000_007);
        let big = FpBig::new_unchecked(BigUint::from(1_000_000_007u64));
        let a = f(&[3, -7, 11, 1_000_000_008]);
        let rs = ModPForm::reduce_unchecked(&a, &small).residues();
        let rb = ModPForm::reduce_unchecked(&a, &big).residues();
        assert_eq!(rs, rb);
        assert_eq!(small.inv(&5).map(BigUint::from), big.inv(&BigInt::from(5)).map(|x| x.magnitude().clone()));
    }

    #[test]
    fn pth_root_extraction() {
        let f3 = Fp64::new(3);
        // (X + Y)^3 = X^3 + Y^3 in characteristic 3
        let a = ModPForm::from_u64(&f3, &[1, 0, 0, 1]);
        let r = a.pth_root().unwrap();
        assert_eq!(r, ModPForm::from_u64(&f3, &[1, 1]));
        assert_eq!(r.pow(3), a);
        assert!(ModPForm::from_u64(&f3, &[1, 1, 0, 0]).pth_root().is_none());
    }
}
