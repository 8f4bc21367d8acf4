//! Exact-arithmetic toolkit for genus-2 fibrations.
//!
//! The crate computes the invariants of a relatively minimal genus-2
//! fibration from its singularity data, evaluates every known bound on its
//! automorphism groups (full, abelian, and cyclic), and reconstructs the
//! extremal example families that show which bounds are attained. All
//! arithmetic is exact; results are integers and reduced fractions.
//!
//! * [`ruled_surface`]: intersection calculus on ruled surfaces and the
//!   double-cover `K^2` formula.
//! * [`pgl2`]: finite Möbius groups, orbit structures, six-point stabilizers.
//! * [`germs`]: the classified local branch configurations and their
//!   singularity indices.
//! * [`invariants`]: relative and global invariants from singularity totals.
//! * [`orbifold`]: Riemann–Hurwitz arithmetic, signature optimization, and a
//!   cyclic-action realizability oracle.
//! * [`bounds`]: the bound formulas, stabilizer bounds, and the exceptional
//!   registry.
//! * [`catalog`]: parametric reconstruction and verification of the extremal
//!   examples.
//! * [`scenario`]: the `.fib` scenario format and the analysis pipeline.

pub mod bounds;
pub mod catalog;
pub mod germs;
pub mod invariants;
pub mod orbifold;
pub mod pgl2;
pub mod rat;
pub mod ruled_surface;
pub mod scenario;

pub use rat::{Rat, RatValue};
