//! Ramification and branch data of a rational map, computed with integer
//! forms only.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::det::bareiss;
use crate::arith::form::{
    jacobian, primitive_part, squarefree_decomposition, IntBinaryForm, SquarefreeDecomposition,
};
use crate::arith::poly::ZPoly;
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;

/// Wronskian, its squarefree structure, and the branch form.
#[derive(Clone, Debug, Serialize)]
pub struct RamificationCore {
    /// Primitive part of `F_X G_Y − F_Y G_X`, degree `2d − 2`.
    pub wronskian: IntBinaryForm,
    /// Factors `(A_i, i)`: every root of `A_i` has ramification index `i + 1`.
    #[serde(serialize_with = "ser_decomposition")]
    pub decomposition: SquarefreeDecomposition,
    pub rad_w: IntBinaryForm,
    /// Primitive `Res_{X,Y}(V·F − U·G, W)`, a form in the image variables.
    pub branch: IntBinaryForm,
    pub rad_b: IntBinaryForm,
}

/// Everything above plus the cofactor `S` with `rad_w · S` the radical of the
/// full preimage of the branch locus.
#[derive(Clone, Debug, Serialize)]
pub struct RamificationData {
    #[serde(flatten)]
    pub core: RamificationCore,
    pub fiber_cofactor: IntBinaryForm,
}

fn ser_decomposition<S: serde::Serializer>(
    d: &SquarefreeDecomposition,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(d.factors.len()))?;
    for (f, i) in &d.factors {
        seq.serialize_element(&(f, i + 1))?;
    }
    seq.end()
}

impl RamificationCore {
    /// `(A_i, e)` pairs with the ramification index `e = i + 1`.
    pub fn indexed_factors(&self) -> impl Iterator<Item = (&IntBinaryForm, usize)> {
        self.decomposition.factors.iter().map(|(f, i)| (f, i + 1))
    }
}

pub fn ramification_core(phi: &RationalMap) -> Result<RamificationCore> {
    let d = phi.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall(d, 2));
    }
    let wronskian = primitive_part(&jacobian(phi.f(), phi.g()))?;
    if wronskian.degree() != 2 * d - 2 {
        return Err(Error::internal("Wronskian has the wrong degree"));
    }
    let decomposition = squarefree_decomposition(&wronskian)?;
    let rad_w = decomposition.radical();
    let branch = primitive_part(&branch_form(phi, &wronskian))?;
    let rad_b = squarefree_decomposition(&branch)?.radical();
    Ok(RamificationCore {
        wronskian,
        decomposition,
        rad_w,
        branch,
        rad_b,
    })
}

/// `Res_{X,Y}(V·F − U·G, W)` as a form in `(U, V)`, computed at `V = 1` by a
/// fraction-free determinant over Z[u] and rehomogenized at degree `deg W`.
pub fn branch_form(phi: &RationalMap, w: &IntBinaryForm) -> IntBinaryForm {
    let d = phi.degree();
    let m = w.degree();
    let n = d + m;
    let entries: Vec<ZPoly> = phi
        .f()
        .coeffs()
        .iter()
        .zip(phi.g().coeffs())
        .map(|(a, b)| ZPoly::new(vec![a.clone(), -b]))
        .collect();
    let mut rows = Vec::with_capacity(n);
    for shift in 0..m {
        let mut row = vec![ZPoly::zero(); n];
        for (i, c) in entries.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..d {
        let mut row = vec![ZPoly::zero(); n];
        for (i, c) in w.coeffs().iter().enumerate() {
            row[shift + i] = ZPoly::constant(c.clone());
        }
        rows.push(row);
    }
    let b = bareiss(rows);
    IntBinaryForm::from_chart(&b, m)
}

/// `rad_B(F, G)` vanishes at each point of each critical fiber to order
/// `e_P`, and `W` to order `e_P − 1`, so `C / W` is the radical of `C`
/// without any gcd computation; `S = C / (W · rad W)`.
pub fn fiber_cofactor(phi: &RationalMap, core: &RamificationCore) -> Result<IntBinaryForm> {
    let c = core.rad_b.substitute(phi.f(), phi.g());
    if c.is_zero() {
        return Err(Error::internal("critical-fiber form vanishes identically"));
    }
    let c = primitive_part(&c)?;
    let rad_c = c
        .div_exact(&core.wronskian)
        .ok_or_else(|| Error::internal("Wronskian does not divide the critical-fiber form"))?;
    rad_c
        .div_exact(&core.rad_w)
        .ok_or_else(|| Error::internal("rad W does not divide the critical-fiber radical"))
}

pub fn ramification_data(phi: &RationalMap) -> Result<RamificationData> {
    let core = ramification_core(phi)?;
    let fiber_cofactor = fiber_cofactor(phi, &core)?;
    Ok(RamificationData {
        core,
        fiber_cofactor,
    })
}

/// On the chart, `f'g − fg'` for a map in normal position (`deg f > deg g`)
/// has leading coefficient `lc(f)·lc(g)·(deg f − deg g)`.
pub fn leading_coeff_identity_check(phi: &RationalMap) -> Result<bool> {
    let (f, g) = phi.chart();
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(Error::NotNormalPosition);
    };
    if df <= dg {
        return Err(Error::NotNormalPosition);
    }
    let w = phi.chart_wronskian();
    let expected = f.lc().unwrap() * g.lc().unwrap() * num_bigint::BigInt::from(df - dg);
    Ok(!expected.is_zero() && w.lc() == Some(&expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(c: &[i64]) -> IntBinaryForm {
        IntBinaryForm::from_i64(c)
    }

    #[test]
    fn product_map_data() {
        let phi = RationalMap::polynomial(&[0, -1, 1]).unwrap();
        let r = ramification_data(&phi).unwrap();
        assert_eq!(r.core.wronskian, form(&[0, 2, -1]));
        assert_eq!(r.core.rad_w, form(&[0, 2, -1]));
        // roots ∞ and -1/4: V(4U + V)
        assert_eq!(r.core.rad_b, form(&[0, 4, 1]));
    }

    #[test]
    fn shifted_square_data() {
        let phi = RationalMap::polynomial(&[1, -2, 1]).unwrap();
        let r = ramification_core(&phi).unwrap();
        assert_eq!(r.rad_w, form(&[0, 1, -1]));
        // roots ∞ and 0: UV
        assert_eq!(r.rad_b, form(&[0, 1, 0]));
    }

    #[test]
    fn quartic_data() {
        let phi = RationalMap::polynomial(&[0, 0, 0, 4, -3]).unwrap();
        let r = ramification_data(&phi).unwrap();
        let idx: Vec<(IntBinaryForm, usize)> =
            r.core.indexed_factors().map(|(f, e)| (f.clone(), e)).collect();
        assert_eq!(idx, vec![(form(&[1, -1]), 2), (form(&[1, 0]), 3), (form(&[0, 1]), 4)]);
        // branch points 1, 0, ∞: U V (U - V)
        assert_eq!(r.core.rad_b, form(&[0, 1, -1, 0]));
        // unramified points over 1: 3x^2+2x+1; over 0: 4/3; over ∞: none
        assert_eq!(r.fiber_cofactor, form(&[9, -6, -5, -4]));
    }

    #[test]
    fn leading_coefficient_identity() {
        for c in [&[0, -1, 1][..], &[0, 0, 0, 1], &[0, 0, 0, 4, -3]] {
            let phi = RationalMap::polynomial(c).unwrap();
            assert!(leading_coeff_identity_check(&phi).unwrap());
        }
        let inv = RationalMap::from_polys(&ZPoly::one(), &ZPoly::x()).unwrap();
        assert_eq!(leading_coeff_identity_check(&inv), Err(Error::NotNormalPosition));
    }
}
