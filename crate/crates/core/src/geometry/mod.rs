//! Exact rational linear algebra and polyhedral primitives.

pub mod cone;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod vector;

pub use cone::{cone_contains, cone_pointed, ConeH, Pointedness};
pub use lp::{lp_feasible, AffineInequality, LinearProgram, LpOutcome, Relation};
pub use polytope::{facets, in_hull_plus_cone, HalfSpace};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use vector::RVec;
