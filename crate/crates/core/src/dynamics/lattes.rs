use num_integer::Integer;
use num_traits::Zero;

use crate::arith::qpoly::QPoly;
use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;

/// `4p³ + 27q²`.
pub fn curve_discriminant(p: &BigRat, q: &BigRat) -> BigRat {
    BigRat::from_integer(4.into()) * p * p * p + BigRat::from_integer(27.into()) * q * q
}

/// The x-coordinate of doubling on `y² = x³ + px + q`:
/// `((F')² − 8xF) / (4F)` with `F = x³ + px + q`.
pub fn lattes_map(p: &BigRat, q: &BigRat) -> Result<RationalMap> {
    if curve_discriminant(p, q).is_zero() {
        return Err(Error::SingularCurve);
    }
    let c = |n: i64| QPoly::constant(BigRat::from_integer(n.into()));
    let x = QPoly::x();
    let f = x.pow(3).add(&x.scale(p)).add(&QPoly::constant(q.clone()));
    let df = x.pow(2).scale(&BigRat::from_integer(3.into())).add(&QPoly::constant(p.clone()));
    let num = df.pow(2).sub(&c(8).mul(&x).mul(&f));
    let den = c(4).mul(&f);
    let k = num.denominator_lcm().lcm(&den.denominator_lcm());
    RationalMap::from_polys(&num.to_zpoly_scaled(&k), &den.to_zpoly_scaled(&k))
}
