//! Exact integer and rational arithmetic, binary forms, and reduction mod p.

pub(crate) mod det;
pub mod factor;
pub mod form;
pub mod modp;
pub mod poly;
pub mod qpoly;

/// Exact rationals, always stored in lowest terms with a positive denominator.
pub type BigRat = num_rational::BigRational;

pub use factor::{factor_integer, Factorization};
pub use form::{
    collision_integer, gcd_forms, jacobian, primitive_part, resultant, squarefree_decomposition,
    IntBinaryForm, SquarefreeDecomposition,
};
pub use modp::{reduce_form, squarefree_mod_p, Fp64, FpBig, ModPForm, Prime, PrimeField, ProjPointFp};
pub use poly::ZPoly;
pub use qpoly::QPoly;
