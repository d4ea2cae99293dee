//! Dense univariate polynomials over Z.
//!
//! This is the chart-level workhorse behind the binary forms: a form of
//! formal degree `n` dehomogenizes on `Y = 1` to one of these plus a count
//! of the root at infinity. Gcds use the primitive polynomial remainder
//! sequence, so every intermediate value stays in Z[x].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with coefficients in ascending degree order and no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: v }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Sparse pseudo-remainder: `lc(b)^k * self mod b` for some `k`.
    /// Only meaningful up to a nonzero constant.
    pub fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.lc().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().unwrap().clone();
            let shift = dr - db;
            let mut next = r.scale(&lb).coeffs;
            for (i, c) in b.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = ZPoly::new(next);
        }
        r
    }

    /// Exact quotient `self / b` in Z[x], or `None` when `b` does not divide.
    pub fn div_exact(&self, b: &ZPoly) -> Option<ZPoly> {
        let db = b.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let lb = b.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in b.coeffs.iter().enumerate() {
                r[k + i] -= &qk * c;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            if b.is_zero() {
                return a;
            }
            if b.degree() == Some(0) {
                return ZPoly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
    }

    /// Yun's squarefree decomposition of a primitive polynomial of positive
    /// degree: `self = ±∏ a_i^i` with each `a_i` primitive, squarefree and
    /// of positive degree. Multiplicities are ascending.
    pub fn squarefree_decomposition(&self) -> Vec<(ZPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.primitive_part();
        let da = a.derivative();
        let c = a.gcd(&da);
        let mut w = a.div_exact(&c).expect("gcd divides polynomial");
        let mut y = da.div_exact(&c).expect("gcd divides derivative");
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let z = &y - &w.derivative();
            let g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.div_exact(&g).expect("gcd divides w");
            y = z.div_exact(&g).expect("gcd divides z");
            i += 1;
        }
        out
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::new(v)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::format::format_poly(self, "x"))
    }
}
