use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::point::ProjPointQ;
use crate::arith::form::{resultant, IntBinaryForm};
use crate::arith::poly::ZPoly;
use crate::error::{Error, Result};

/// An endomorphism `[X : Y] ↦ [F(X, Y) : G(X, Y)]` of P^1 over Q.
///
/// `F` and `G` share the formal degree `d`, have joint coefficient gcd 1,
/// and are coprime. The first nonzero coefficient of `G` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalMap {
    f: IntBinaryForm,
    g: IntBinaryForm,
}

/// Validates and normalizes a pair of forms into a map.
pub fn new_map(f: IntBinaryForm, g: IntBinaryForm) -> Result<RationalMap> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            f: f.degree(),
            g: g.degree(),
        });
    }
    if f.degree() == 0 {
        return Err(Error::DegreeTooSmall(0, 1));
    }
    if resultant(&f, &g).is_zero() {
        return Err(Error::CommonFactor);
    }
    Ok(RationalMap::normalized(f, g))
}

impl RationalMap {
    /// Strips the joint content and fixes the sign; no coprimality check.
    fn normalized(f: IntBinaryForm, g: IntBinaryForm) -> Self {
        let mut c = f.content().gcd(&g.content());
        let lead = g.first_nonzero().or(f.first_nonzero());
        if lead.is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            RationalMap { f, g }
        } else {
            RationalMap {
                f: f.div_scalar(&c),
                g: g.div_scalar(&c),
            }
        }
    }

    /// `f(x) / g(x)` from chart polynomials, homogenized at `max(deg f, deg g)`.
    pub fn from_polys(f: &ZPoly, g: &ZPoly) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroDenominator { offset: 0 });
        }
        let d = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
        new_map(IntBinaryForm::from_chart(f, d), IntBinaryForm::from_chart(g, d))
    }

    /// Polynomial map `f(x)`.
    pub fn polynomial(coeffs_ascending: &[i64]) -> Result<Self> {
        Self::from_polys(&ZPoly::from_i64(coeffs_ascending), &ZPoly::one())
    }

    pub fn identity() -> Self {
        RationalMap {
            f: IntBinaryForm::x(),
            g: IntBinaryForm::y(),
        }
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &IntBinaryForm {
        &self.f
    }

    pub fn g(&self) -> &IntBinaryForm {
        &self.g
    }

    /// Chart numerator and denominator `f(x) = F(x, 1)`, `g(x) = G(x, 1)`.
    pub fn chart(&self) -> (ZPoly, ZPoly) {
        (self.f.chart(), self.g.chart())
    }

    pub fn resultant(&self) -> BigInt {
        resultant(&self.f, &self.g)
    }

    pub fn evaluate(&self, p: &ProjPointQ) -> ProjPointQ {
        let u = self.f.eval(p.x(), p.y());
        let v = self.g.eval(p.x(), p.y());
        ProjPointQ::new(u, v).expect("coprime forms have no common zero")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RationalMap) -> RationalMap {
        let f = self.f.substitute(&other.f, &other.g);
        let g = self.g.substitute(&other.f, &other.g);
        RationalMap::normalized(f, g)
    }

    /// The `n`-th iterate; `n = 0` gives the identity.
    pub fn iterate(&self, n: usize) -> RationalMap {
        let mut acc = RationalMap::identity();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `X·G − Y·F`, whose roots are the fixed points; degree `d + 1`.
    pub fn fixed_point_form(&self) -> IntBinaryForm {
        IntBinaryForm::x()
            .mul(&self.g)
            .sub(&IntBinaryForm::y().mul(&self.f))
    }

    /// `v·F − u·G`, whose roots are the preimages of `[u : v]`.
    pub fn preimage_form(&self, target: &ProjPointQ) -> IntBinaryForm {
        self.f.scale(target.y()).sub(&self.g.scale(target.x()))
    }

    /// `f'g − fg'` on the chart, before any normalization.
    pub fn chart_wronskian(&self) -> ZPoly {
        let (f, g) = self.chart();
        &(&f.derivative() * &g) - &(&f * &g.derivative())
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.chart();
        f.write_str(&crate::cli::format::format_rational_function(&num, &den))
    }
}
