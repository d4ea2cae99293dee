use num_bigint::BigInt;
use num_traits::Zero;

use super::map::{new_map, RationalMap};
use super::point::ProjPointQ;
use crate::arith::form::IntBinaryForm;
use crate::arith::modp::{Prime, PrimeField, ProjPointFp};
use crate::error::{Error, Result};

/// The matrix `[[a, b], [c, d]]`, acting as `[X : Y] ↦ [aX + bY : cX + dY]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moebius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Moebius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let m = Moebius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).unwrap()
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Integral entries (always, here) and a determinant prime to `p`.
    pub fn is_invertible_mod(&self, p: &Prime) -> bool {
        !p.divides(&self.det())
    }

    /// The adjugate, which is the inverse in PGL_2.
    pub fn inverse(&self) -> Self {
        Moebius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn as_map(&self) -> RationalMap {
        new_map(
            IntBinaryForm::new(vec![self.a.clone(), self.b.clone()]),
            IntBinaryForm::new(vec![self.c.clone(), self.d.clone()]),
        )
        .expect("nonsingular matrix gives a degree-one map")
    }

    pub fn apply(&self, p: &ProjPointQ) -> ProjPointQ {
        ProjPointQ::new(
            &self.a * p.x() + &self.b * p.y(),
            &self.c * p.x() + &self.d * p.y(),
        )
        .expect("nonsingular matrix")
    }

    /// Action of the reduced matrix; `None` if it is singular mod p.
    pub fn apply_mod_p<K: PrimeField>(&self, k: &K, p: &ProjPointFp<K>) -> Option<ProjPointFp<K>> {
        let (a, b, c, d) = (
            k.reduce(&self.a),
            k.reduce(&self.b),
            k.reduce(&self.c),
            k.reduce(&self.d),
        );
        ProjPointFp::new(
            k,
            k.add(&k.mul(&a, &p.x), &k.mul(&b, &p.y)),
            k.add(&k.mul(&c, &p.x), &k.mul(&d, &p.y)),
        )
    }
}

/// `α ∘ Φ ∘ β`.
pub fn conjugate(alpha: &Moebius, phi: &RationalMap, beta: &Moebius) -> Result<RationalMap> {
    if alpha.det().is_zero() || beta.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(alpha.as_map().compose(phi).compose(&beta.as_map()))
}

impl Default for Moebius {
    fn default() -> Self {
        Self::identity()
    }
}
