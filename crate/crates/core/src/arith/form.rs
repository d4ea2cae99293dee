//! Homogeneous integer forms in two variables.
//!
//! Coefficient `i` of a form of degree `n` belongs to `X^(n-i) Y^i`. The
//! number of leading zero coefficients is the multiplicity of the root at
//! infinity `[1:0]`; dehomogenizing on `Y = 1` gives the chart polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::det::{bareiss, sylvester};
use super::poly::ZPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntBinaryForm {
    coeffs: Vec<BigInt>,
}

impl IntBinaryForm {
    /// Builds a form from its coefficient list; the degree is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        IntBinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![BigInt::zero(); degree + 1])
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[1, 0])
    }

    pub fn y() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `X^a Y^b`
    pub fn monomial(a: usize, b: usize) -> Self {
        let mut v = vec![BigInt::zero(); a + b + 1];
        v[b] = BigInt::one();
        Self::new(v)
    }

    /// Homogenizes a chart polynomial at degree `degree` (which must be at
    /// least the polynomial degree).
    pub fn from_chart(p: &ZPoly, degree: usize) -> Self {
        debug_assert!(p.degree().unwrap_or(0) <= degree);
        Self::new((0..=degree).map(|i| p.coeff(degree - i)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The dehomogenization `A(x, 1)`.
    pub fn chart(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplicity of the root at infinity; `degree + 1` for the zero form.
    pub fn y_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// First nonzero coefficient, i.e. the leading coefficient of the chart.
    pub fn first_nonzero(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub(crate) fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degree");
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = vec![BigInt::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂A/∂X` as a form of degree `n - 1` (the zero form of degree 0 when `n = 0`).
    pub fn partial_x(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0);
        }
        Self::new(
            (0..n)
                .map(|i| &self.coeffs[i] * BigInt::from(n - i))
                .collect(),
        )
    }

    /// `∂A/∂Y` as a form of degree `n - 1`.
    pub fn partial_y(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..=n)
                .map(|i| &self.coeffs[i] * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        // Horner in x with y-powers carried along.
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        let n = self.degree();
        let mut terms = Vec::with_capacity(n + 1);
        for i in 0..=n {
            terms.push(&self.coeffs[i] * &ypow);
            if i < n {
                ypow *= y;
            }
        }
        for t in terms {
            acc = acc * x + t;
        }
        acc
    }

    /// `A(P, Q)` for forms `P`, `Q` of a common degree `m`; the result has degree `n * m`.
    pub fn substitute(&self, p: &Self, q: &Self) -> Self {
        assert_eq!(p.degree(), q.degree(), "substituted forms must share a degree");
        let n = self.degree();
        let m = p.degree();
        let mut ppow = vec![Self::one()];
        let mut qpow = vec![Self::one()];
        for k in 1..=n {
            ppow.push(ppow[k - 1].mul(p));
            qpow.push(qpow[k - 1].mul(q));
        }
        let mut acc = Self::zero(n * m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&ppow[n - i].mul(&qpow[i]).scale(c));
        }
        acc
    }

    /// Exact quotient of forms, or `None` if `other` does not divide `self` in Z[X, Y].
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() || other.degree() > self.degree() {
            return None;
        }
        let deg = self.degree() - other.degree();
        if self.is_zero() {
            return Some(Self::zero(deg));
        }
        let ka = self.y_multiplicity();
        let kb = other.y_multiplicity();
        if kb > ka {
            return None;
        }
        let q = self.chart().div_exact(&other.chart())?;
        Some(Self::from_chart(&q, deg))
    }

    pub fn to_chart_string(&self) -> String {
        crate::cli::format::format_poly(&self.chart(), "x")
    }
}

impl fmt::Display for IntBinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (xe, ye) = (n - i, i);
            let mono = match (xe, ye) {
                (0, 0) => String::new(),
                (a, 0) => pow_str("X", a),
                (0, b) => pow_str("Y", b),
                (a, b) => format!("{}*{}", pow_str("X", a), pow_str("Y", b)),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            }
            write!(f, "{body}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

impl Serialize for IntBinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

/// Divides by the content and makes the first nonzero coefficient positive.
pub fn primitive_part(a: &IntBinaryForm) -> Result<IntBinaryForm> {
    if a.is_zero() {
        return Err(Error::ZeroForm);
    }
    let mut c = a.content();
    if a.first_nonzero().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    Ok(a.div_scalar(&c))
}

/// Primitive gcd of two forms, with the shared power of `Y` handled explicitly.
pub fn gcd_forms(a: &IntBinaryForm, b: &IntBinaryForm) -> Result<IntBinaryForm> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::ZeroForm),
        (true, false) => primitive_part(b),
        (false, true) => primitive_part(a),
        (false, false) => {
            let k = a.y_multiplicity().min(b.y_multiplicity());
            let g = a.chart().gcd(&b.chart());
            let deg = g.degree().unwrap_or(0) + k;
            Ok(IntBinaryForm::from_chart(&g, deg))
        }
    }
}

/// Squarefree decomposition `unit * ∏ A_i^i` with primitive, pairwise coprime,
/// squarefree factors, ordered by multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: BigInt,
    pub factors: Vec<(IntBinaryForm, usize)>,
}

impl SquarefreeDecomposition {
    /// The squarefree part `∏ A_i`.
    pub fn radical(&self) -> IntBinaryForm {
        self.factors
            .iter()
            .fold(IntBinaryForm::one(), |acc, (f, _)| acc.mul(f))
    }

    pub fn expand(&self) -> IntBinaryForm {
        self.factors
            .iter()
            .fold(IntBinaryForm::from_i64(&[1]).scale(&self.unit), |acc, (f, i)| {
                acc.mul(&f.pow(*i))
            })
    }

    /// `Σ i * deg(A_i)`
    pub fn weighted_degree(&self) -> usize {
        self.factors.iter().map(|(f, i)| i * f.degree()).sum()
    }
}

/// Yun's algorithm on the chart `Y = 1`, with the root at infinity patched in
/// from the explicit `Y` valuation.
pub fn squarefree_decomposition(a: &IntBinaryForm) -> Result<SquarefreeDecomposition> {
    if a.is_zero() {
        return Err(Error::ZeroForm);
    }
    let unit = a.content()
        * if a.first_nonzero().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
    let k = a.y_multiplicity();
    let chart = a.chart();
    let mut factors: Vec<(IntBinaryForm, usize)> = chart
        .squarefree_decomposition()
        .into_iter()
        .map(|(g, i)| {
            let deg = g.degree().unwrap();
            (IntBinaryForm::from_chart(&g, deg), i)
        })
        .collect();
    if k > 0 {
        match factors.iter_mut().find(|(_, i)| *i == k) {
            Some((f, _)) => *f = f.mul(&IntBinaryForm::y()),
            None => {
                factors.push((IntBinaryForm::y(), k));
                factors.sort_by_key(|(_, i)| *i);
            }
        }
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

/// Sylvester resultant of two forms taken at their formal degrees.
pub fn resultant(a: &IntBinaryForm, b: &IntBinaryForm) -> BigInt {
    bareiss(sylvester(a.coeffs(), b.coeffs()))
}

/// `Res(∂A/∂X, ∂A/∂Y)`: for a form of degree `n ≥ 2` this is `±n^(n-2)` times
/// the discriminant, so a prime `p` divides it whenever two roots of `A`
/// collide mod `p`, and conversely when `p ∤ n`. Forms of degree below two
/// have no collisions and get 1.
pub fn collision_integer(a: &IntBinaryForm) -> BigInt {
    if a.degree() < 2 {
        return BigInt::one();
    }
    resultant(&a.partial_x(), &a.partial_y())
}

/// The Jacobian `A_X B_Y - A_Y B_X` of two forms of equal degree `d`; degree `2d - 2`.
pub fn jacobian(a: &IntBinaryForm, b: &IntBinaryForm) -> IntBinaryForm {
    a.partial_x()
        .mul(&b.partial_y())
        .sub(&a.partial_y().mul(&b.partial_x()))
}
