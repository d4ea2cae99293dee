//! Two special cases where the reduction criteria simplify: maps whose
//! critical fibers are entirely ramified, and maps of degree two.

use super::criteria::MapAnalysis;
use crate::arith::modp::{Prime, PrimeField};
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;
use crate::with_field;

/// Every point of every critical fiber is a ramification point.
pub fn galois_hypothesis_test(phi: &RationalMap) -> Result<bool> {
    Ok(MapAnalysis::new(phi.clone()).fiber_cofactor()?.degree() == 0)
}

/// Under the fiber hypothesis: `(sgr ∧ cgr) ⟺ (nonconstant ∧ ram_nonsingular)`.
pub fn galois_prop_verify(phi: &RationalMap, p: &Prime) -> Result<bool> {
    let a = MapAnalysis::new(phi.clone());
    if a.fiber_cofactor()?.degree() != 0 {
        return Err(Error::HypothesisFails);
    }
    with_field!(p, |k| {
        let reduced = a.reduce(k);
        let sgr = a.sgr(k, &reduced)?;
        let (cgr, ram, _) = a.cgr(k)?;
        Ok((sgr && cgr) == (!reduced.is_constant() && ram))
    })
}

impl MapAnalysis {
    /// The degree-two statement at `p`; odd `p` compares S.G.R. with
    /// C.G.R. plus nonconstancy, `p = 2` additionally asks the reduction to
    /// factor through Frobenius.
    pub fn degree2<K: PrimeField>(&self, k: &K) -> Result<bool> {
        if self.degree() != 2 {
            return Err(Error::InvalidArgument(format!(
                "degree-two check on a map of degree {}",
                self.degree()
            )));
        }
        let reduced = self.reduce(k);
        let sgr = self.sgr(k, &reduced)?;
        let (cgr, _, _) = self.cgr(k)?;
        let nonconstant = !reduced.is_constant();
        if k.small_char() == Some(2) {
            let frob =
                reduced.f1().is_in_frobenius_image() && reduced.g1().is_in_frobenius_image();
            Ok((sgr && frob) == (cgr && nonconstant))
        } else {
            Ok(sgr == (cgr && nonconstant))
        }
    }
}

pub fn degree2_verify(phi: &RationalMap, p: &Prime) -> Result<bool> {
    let a = MapAnalysis::new(phi.clone());
    with_field!(p, |k| a.degree2(k))
}
