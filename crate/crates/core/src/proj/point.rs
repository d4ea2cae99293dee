use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::modp::{PrimeField, ProjPointFp};
use crate::arith::BigRat;

/// A point `[x : y]` of P^1(Q) with coprime integer coordinates, `y > 0`
/// for finite points and `[1 : 0]` for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPointQ {
    x: BigInt,
    y: BigInt,
}

impl ProjPointQ {
    /// `None` when both coordinates vanish.
    pub fn new(x: BigInt, y: BigInt) -> Option<Self> {
        if x.is_zero() && y.is_zero() {
            return None;
        }
        let mut g = x.gcd(&y);
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            g = -g;
        }
        Some(ProjPointQ {
            x: &x / &g,
            y: &y / &g,
        })
    }

    pub fn from_i64(x: i64, y: i64) -> Option<Self> {
        Self::new(BigInt::from(x), BigInt::from(y))
    }

    pub fn integer(n: i64) -> Self {
        Self::from_i64(n, 1).unwrap()
    }

    pub fn infinity() -> Self {
        ProjPointQ {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn from_rat(r: &BigRat) -> Self {
        ProjPointQ {
            x: r.numer().clone(),
            y: r.denom().clone(),
        }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate, `None` at infinity.
    pub fn to_rat(&self) -> Option<BigRat> {
        if self.is_infinity() {
            None
        } else {
            Some(BigRat::new(self.x.clone(), self.y.clone()))
        }
    }

    /// Larger bit length of the two coordinates.
    pub fn bits(&self) -> u64 {
        self.x.bits().max(self.y.bits())
    }

    /// `[x mod p : y mod p]`; well defined because the coordinates are coprime.
    pub fn reduce<K: PrimeField>(&self, k: &K) -> ProjPointFp<K> {
        ProjPointFp::new(k, k.reduce(&self.x), k.reduce(&self.y))
            .expect("coprime coordinates cannot both vanish mod p")
    }
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.y.is_one() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{}/{}", self.x, self.y)
        }
    }
}

impl Serialize for ProjPointQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(ProjPointQ::from_i64(2, -4).unwrap(), ProjPointQ::from_i64(-1, 2).unwrap());
        assert_eq!(ProjPointQ::from_i64(-3, 0).unwrap(), ProjPointQ::infinity());
        assert!(ProjPointQ::from_i64(0, 0).is_none());
        assert_eq!(ProjPointQ::from_i64(0, -5).unwrap(), ProjPointQ::integer(0));
        assert_eq!(ProjPointQ::from_i64(-1, 4).unwrap().to_string(), "-1/4");
    }
}
