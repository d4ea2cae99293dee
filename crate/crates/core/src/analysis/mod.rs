//! Ramification data and the reduction criteria built on it.

pub mod bad_primes;
pub mod criteria;
pub mod props;
pub mod ramification;

pub use bad_primes::{cgr_bad_primes, inseparable_primes, sgr_bad_primes, BadPrimes};
pub use criteria::{
    cgr_test, lemma7_conditions, separability_test, sgr_test, theorem1_verify, Lemma7,
    MapAnalysis, ReductionReport,
};
pub use props::{degree2_verify, galois_hypothesis_test, galois_prop_verify};
pub use ramification::{
    leading_coeff_identity_check, ramification_data, RamificationCore, RamificationData,
};
