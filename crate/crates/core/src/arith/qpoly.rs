//! Univariate polynomials over Q, used while parsing map expressions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::ZPoly;
use super::BigRat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![BigRat::zero(), BigRat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        match self.coeffs.len() {
            0 => Some(BigRat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRat::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut v = vec![BigRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigRat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lcm of the coefficient denominators (1 for the zero polynomial).
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// `self * k` as an integer polynomial; `k` must clear every denominator.
    pub fn to_zpoly_scaled(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c * BigRat::from_integer(k.clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect(),
        )
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| BigRat::from_integer(c.clone()))
                .collect(),
        )
    }
}
