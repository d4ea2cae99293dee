//! Enumeration of the primes where a criterion fails. Candidates come from
//! integer invariants whose prime divisors contain every failure, then each
//! candidate is tested directly.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use super::criteria::{wronskian_content, MapAnalysis};
use crate::arith::factor::{factor_integer, primes_up_to};
use crate::arith::form::collision_integer;
use crate::arith::modp::Prime;
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;
use crate::with_field;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BadPrimes {
    pub primes: Vec<Prime>,
    /// False when some candidate integer could not be fully factored.
    pub complete: bool,
    #[serde(serialize_with = "crate::cli::report::ser_biguint_vec")]
    pub unfactored: Vec<BigUint>,
}

/// Prime divisors of a set of integers, plus whatever could not be split.
#[derive(Default)]
struct Candidates {
    primes: BTreeSet<Prime>,
    unfactored: Vec<BigUint>,
}

impl Candidates {
    fn add_divisors_of(&mut self, n: &BigInt) -> Result<()> {
        if n.is_zero() {
            return Err(Error::internal("candidate integer is zero"));
        }
        let f = factor_integer(n)?;
        for p in f.distinct() {
            self.primes.insert(Prime::new(p)?);
        }
        self.unfactored.extend(f.unfactored);
        Ok(())
    }

    fn add_primes_up_to(&mut self, bound: usize) {
        for p in primes_up_to(bound as u32) {
            self.primes.insert(Prime::from_u64(p as u64).unwrap());
        }
    }

    fn filter(self, mut bad: impl FnMut(&Prime) -> Result<bool>) -> Result<BadPrimes> {
        let mut primes = Vec::new();
        for p in self.primes {
            if bad(&p)? {
                primes.push(p);
            }
        }
        Ok(BadPrimes {
            primes,
            complete: self.unfactored.is_empty(),
            unfactored: self.unfactored,
        })
    }
}

impl MapAnalysis {
    pub fn sgr_bad_primes(&self) -> Result<BadPrimes> {
        let mut c = Candidates::default();
        c.add_divisors_of(self.resultant())?;
        c.filter(|p| {
            let good = with_field!(p, |k| self.sgr(k, &self.reduce(k)))?;
            if good {
                return Err(Error::internal(format!("{p} divides the resultant but passes")));
            }
            Ok(true)
        })
    }

    pub fn cgr_bad_primes(&self) -> Result<BadPrimes> {
        let core = self.ramification()?;
        let mut c = Candidates::default();
        c.add_primes_up_to(2 * self.degree() - 2);
        c.add_divisors_of(&collision_integer(&core.rad_w))?;
        c.add_divisors_of(&collision_integer(&core.rad_b))?;
        c.filter(|p| Ok(!with_field!(p, |k| self.cgr(k))?.0))
    }

    pub fn inseparable_primes(&self) -> Result<BadPrimes> {
        let mut c = Candidates::default();
        c.add_primes_up_to(2 * self.degree() - 2);
        c.add_divisors_of(&wronskian_content(self.map()))?;
        c.add_divisors_of(self.resultant())?;
        c.filter(|p| Ok(!with_field!(p, |k| self.separable(&self.reduce(k)))?))
    }
}

pub fn sgr_bad_primes(phi: &RationalMap) -> Result<BadPrimes> {
    MapAnalysis::new(phi.clone()).sgr_bad_primes()
}

pub fn cgr_bad_primes(phi: &RationalMap) -> Result<BadPrimes> {
    MapAnalysis::new(phi.clone()).cgr_bad_primes()
}

pub fn inseparable_primes(phi: &RationalMap) -> Result<BadPrimes> {
    MapAnalysis::new(phi.clone()).inseparable_primes()
}
