//! Exact rational arithmetic and the sparse polynomial engine used by every
//! symbolic constant in the crate.

mod mpoly;
mod rational;
mod region;

pub use mpoly::{vars, DegreeCaps, MPoly, Monomial, Var};
pub use rational::{format_rational, int, parse_rational, pow, rat, signum, to_f64, Rational};
pub use region::{region_vars, PolyRegionT};
