//! Orbits, rational periodic and preperiodic points, Lattès maps, and the
//! uniform bounds.

pub mod bounds;
pub mod lattes;
pub mod orbit;
pub mod periodic;
pub mod roots;

pub use bounds::{canci_log_bound, corollary_log_c, ms_bound, BoundSpec, CorollaryBound};
pub use lattes::{curve_discriminant, lattes_map};
pub use orbit::{orbit, two_adic_escape_check, OrbitResult};
pub use periodic::{periodic_points, preperiodic_points, PeriodicPoints, PreperiodicPoints};
pub use roots::{rational_roots, RootSearch};
