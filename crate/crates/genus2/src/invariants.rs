//! Relative and global invariants of a relatively minimal genus-2 fibration
//! from its total singularity indices.
//!
//! With `s2` and `s3` the total second and third singularity indices,
//!
//! ```text
//! K^2_{S/C} = (s2 + 7 s3) / 5 = 2n - s3
//! chi_f     = (s2 + 2 s3) / 10 = n - s3
//! ```
//!
//! Both displayed quantities are integers, which forces
//! `s2 + 2 s3 = 0 (mod 10)`; a budget violating the congruence cannot come
//! from an actual fibration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Total singularity indices of a fibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularityBudget {
    pub s2: u64,
    pub s3: u64,
}

impl SingularityBudget {
    pub const fn new(s2: u64, s3: u64) -> Self {
        SingularityBudget { s2, s3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error(
    "budget (s2 = {s2}, s3 = {s3}) is impossible: s2 + 2*s3 = {sum} is not divisible by 10"
)]
pub struct NonIntegral {
    pub s2: u64,
    pub s3: u64,
    pub sum: u64,
}

/// True iff the budget satisfies the integrality congruence.
pub fn validate_budget(b: &SingularityBudget) -> bool {
    (b.s2 + 2 * b.s3) % 10 == 0
}

/// Invariants of the fibration relative to its base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeInvariants {
    /// `K^2_{S/C} = K^2_S - 8(g(C) - 1)`.
    pub ksq_rel: u64,
    /// `chi_f = chi(O_S) - (g(C) - 1)`.
    pub chi_f: u64,
    /// Fiber coefficient `n` of the principal branch class
    /// `R_p = -3 K_{P/C} + n F`.
    pub n: u64,
}

pub fn relative_invariants(b: &SingularityBudget) -> Result<RelativeInvariants, NonIntegral> {
    if !validate_budget(b) {
        return Err(NonIntegral {
            s2: b.s2,
            s3: b.s3,
            sum: b.s2 + 2 * b.s3,
        });
    }
    let ksq_rel = (b.s2 + 7 * b.s3) / 5;
    let chi_f = (b.s2 + 2 * b.s3) / 10;
    Ok(RelativeInvariants {
        ksq_rel,
        chi_f,
        n: chi_f + b.s3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalInvariants {
    pub ksq: i64,
    pub chi: i64,
}

/// `K^2_S` and `chi(O_S)` over a base of the given genus.
pub fn global_invariants(
    b: &SingularityBudget,
    base_genus: u32,
) -> Result<GlobalInvariants, NonIntegral> {
    let rel = relative_invariants(b)?;
    let shift = i64::from(base_genus) - 1;
    Ok(GlobalInvariants {
        ksq: rel.ksq_rel as i64 + 8 * shift,
        chi: rel.chi_f as i64 + shift,
    })
}
