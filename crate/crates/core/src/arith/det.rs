//! Fraction-free (Bareiss) determinants over integral domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::ZPoly;

/// The operations Bareiss elimination needs: every division it performs is exact.
pub(crate) trait DetRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
}

impl DetRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "Bareiss division not exact");
        q
    }
}

impl DetRing for ZPoly {
    fn zero() -> Self {
        ZPoly::zero()
    }
    fn one() -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        ZPoly::div_exact(self, other).expect("Bareiss division not exact")
    }
}

pub(crate) fn bareiss<R: DetRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix of two coefficient lists (descending powers), of formal
/// degrees `a.len() - 1` and `b.len() - 1`.
pub(crate) fn sylvester<R: DetRing>(a: &[R], b: &[R]) -> Vec<Vec<R>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![R::zero(); size];
        for (i, c) in a.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![R::zero(); size];
        for (i, c) in b.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}
