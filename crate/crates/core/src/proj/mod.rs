//! Rational self-maps of P^1 over Q, Möbius transformations, and reduction mod p.

pub mod map;
pub mod moebius;
pub mod point;
pub mod reduce;

pub use map::{new_map, RationalMap};
pub use moebius::{conjugate, Moebius};
pub use point::ProjPointQ;
pub use reduce::{evaluate_mod_p, is_constant, reduce_map, ReducedMap};
