//! Intersection arithmetic on relatively minimal ruled surfaces.
//!
//! The Néron–Severi lattice of a relatively minimal ruled surface over a curve
//! of genus `g` is generated by a minimal section `C0` (with `C0^2 = -e`) and
//! a fiber `F` (with `F^2 = 0`, `C0.F = 1`). Everything here is exact integer
//! arithmetic on classes `a*C0 + b*F`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Numerical-equivalence class `a*C0 + b*F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*C0 + {}*F", self.a, self.b)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.a, -self.b)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * rhs.a, self * rhs.b)
    }
}

/// The two surface shapes used by the constructions in this crate.
///
/// `Product` is `C x P^1` with `C0` a fiber of the second projection
/// (a section of the ruling, self-intersection 0, so `e = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Product,
    Hirzebruch { e: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuledSurfaceModel {
    pub base_genus: u32,
    pub kind: SurfaceKind,
}

/// Raised when a branch class is not twice an integral class, so the double
/// cover does not exist.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("branch class {0} is not twice an integral class on this surface")]
pub struct OddClass(pub DivisorClass);

impl RuledSurfaceModel {
    pub const fn product(base_genus: u32) -> Self {
        RuledSurfaceModel {
            base_genus,
            kind: SurfaceKind::Product,
        }
    }

    pub const fn hirzebruch(base_genus: u32, e: u32) -> Self {
        RuledSurfaceModel {
            base_genus,
            kind: SurfaceKind::Hirzebruch { e },
        }
    }

    /// Self-intersection `-e` of the minimal section (0 on a product).
    pub fn e(&self) -> i64 {
        match self.kind {
            SurfaceKind::Product => 0,
            SurfaceKind::Hirzebruch { e } => i64::from(e),
        }
    }

    /// Intersection pairing: `C0^2 = -e`, `C0.F = 1`, `F^2 = 0`, extended
    /// bilinearly. Symmetric in its two arguments.
    pub fn intersect(&self, d1: DivisorClass, d2: DivisorClass) -> i64 {
        let e = i128::from(self.e());
        let (a1, b1) = (i128::from(d1.a), i128::from(d1.b));
        let (a2, b2) = (i128::from(d2.a), i128::from(d2.b));
        let v = -e * a1 * a2 + a1 * b2 + a2 * b1;
        i64::try_from(v).expect("intersection number overflows i64")
    }

    pub fn self_intersection(&self, d: DivisorClass) -> i64 {
        self.intersect(d, d)
    }

    /// Canonical class `K_P = -2*C0 + (2g - 2 - e)*F`.
    pub fn canonical_class(&self) -> DivisorClass {
        let g = i64::from(self.base_genus);
        DivisorClass::new(-2, 2 * g - 2 - self.e())
    }

    /// Relative canonical class of the ruling, `K_P` minus the pullback of the
    /// base canonical class: `-2*C0 - e*F`.
    pub fn relative_canonical(&self) -> DivisorClass {
        let g = i64::from(self.base_genus);
        let k = self.canonical_class();
        k - DivisorClass::new(0, 2 * g - 2)
    }

    /// `K_S^2 = 2*(K_P + R/2)^2` for the double cover of this surface branched
    /// along `r`. Exact when the branch locus has at most negligible
    /// singularities; callers with worse germs must go through the
    /// singularity-index formulas instead.
    ///
    /// `r/2` must be integral: `a` even always, and `b` even on a Hirzebruch
    /// surface. On a product, odd `b` is allowed (the fiber direction only
    /// needs 2-divisibility in the `C0` coefficient for these models).
    pub fn double_cover_ksq(&self, r: DivisorClass) -> Result<i64, OddClass> {
        let b_ok = match self.kind {
            SurfaceKind::Product => true,
            SurfaceKind::Hirzebruch { .. } => r.b % 2 == 0,
        };
        if r.a % 2 != 0 || !b_ok {
            return Err(OddClass(r));
        }
        let t = 2 * self.canonical_class() + r;
        let v = self.self_intersection(t);
        debug_assert!(v % 2 == 0);
        Ok(v / 2)
    }
}
