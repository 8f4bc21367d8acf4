//! Classified local branch configurations over a disk and their singularity
//! indices.
//!
//! For a local genus-2 family over a disk whose central fiber is singular,
//! the fiberwise Möbius group `Kbar` pins the horizontal branch locus down to
//! a short list of local equations, each with a known lower bound for the
//! second singularity index `s2(F0)` and a known third index `s3(F0)`. This
//! module is the table of those rows, the order/index ratio summary derived
//! from it, and an independent discriminant-valuation oracle for the local
//! equations that are products of binomials.
//!
//! Rows are identified by `(group, case_id, k)` where `case_id` numbers the
//! cases within the row's family (`0` is the fiber-in-branch configuration of
//! the large groups `O24`/`T12`/`D12`) and `k` is the exponent in the local
//! equation where one appears.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pgl2::{lift_order, FiniteMobiusGroup};
use crate::rat::{rat, Rat};

/// Version of the embedded classification data exported by the CLI.
pub const GERM_TABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("no classified branch configuration for group {group}, case {case_id}, k {k:?}")]
    UnknownCase {
        group: FiniteMobiusGroup,
        case_id: u8,
        k: Option<u32>,
    },
    #[error("branch factors are not squarefree: the section x = 0 appears twice")]
    NotSquarefree,
}

/// One classified local configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GermCase {
    pub group: FiniteMobiusGroup,
    pub case_id: u8,
    /// Exponent in the local equation; `None` for the fiber-in-branch row.
    pub k: Option<u32>,
}

impl GermCase {
    pub const fn new(group: FiniteMobiusGroup, case_id: u8, k: Option<u32>) -> Self {
        GermCase { group, case_id, k }
    }
}

/// Third singularity index of a row: an exact value, or zero-by-assumption
/// for rows stated as "s3 = 0 implies s2 >= ...". Choosing a conditional row
/// asserts the `s3 = 0` branch; the `s3 > 0` branch is handled by the
/// stabilizer bound for positive third index instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThirdIndex {
    Exact(u32),
    ConditionalZero,
}

impl ThirdIndex {
    pub fn value(&self) -> u32 {
        match *self {
            ThirdIndex::Exact(v) => v,
            ThirdIndex::ConditionalZero => 0,
        }
    }

    pub fn is_conditional(&self) -> bool {
        matches!(self, ThirdIndex::ConditionalZero)
    }
}

/// Singularity indices attached to a classified row. `s2_min` is a lower
/// bound unless `exact` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermIndices {
    pub s2_min: u32,
    pub s3: ThirdIndex,
    pub exact: bool,
}

/// Look up the singularity indices of a classified configuration.
pub fn classify(case: &GermCase) -> Result<GermIndices, GermError> {
    use FiniteMobiusGroup::*;
    let unknown = || GermError::UnknownCase {
        group: case.group,
        case_id: case.case_id,
        k: case.k,
    };
    let indices = |s2_min, s3, exact| GermIndices { s2_min, s3, exact };
    let k_in = |lo: u32, hi: u32| match case.k {
        Some(k) if (lo..=hi).contains(&k) => Ok(k),
        _ => Err(unknown()),
    };
    let k_any = || k_in(1, u32::MAX);

    match (case.group, case.case_id) {
        // F0 contained in the branch locus, 6 ordinary double points on it.
        (Octahedral | Tetrahedral | Dihedral(6), 0) => {
            if case.k.is_some() {
                return Err(unknown());
            }
            Ok(indices(10, ThirdIndex::Exact(0), true))
        }
        // D6: (x^3 - t^k)(t^k x^3 - 1)
        (Dihedral(3), 1) => k_any().map(|_| indices(4, ThirdIndex::ConditionalZero, false)),
        // D6: (x^3 - 1)^2 - t^k (x^3 + 1)^2
        (Dihedral(3), 2) => k_any().map(|_| indices(3, ThirdIndex::Exact(0), false)),
        // Z6: x^6 - t^k, 1 <= k <= 3; k = 3 is the non-negligible case.
        (Cyclic(6), 1) => k_in(1, 3).map(|k| {
            if k == 3 {
                indices(3, ThirdIndex::Exact(1), true)
            } else {
                indices(5, ThirdIndex::Exact(0), false)
            }
        }),
        // Z5: x (x^5 - t^k), k = 1, 2
        (Cyclic(5), 1) => k_in(1, 2).map(|_| indices(6, ThirdIndex::Exact(0), false)),
        // Z5: x (t^k x^5 - 1), k = 1, 2
        (Cyclic(5), 2) => k_in(1, 2).map(|_| indices(4, ThirdIndex::Exact(0), false)),
        // D4: (x^2 - 1)((x-1)^2 - t^k (x+1)^2)(t^k (x-1)^2 - (x+1)^2)
        (Dihedral(2), 1) => k_any().map(|_| indices(6, ThirdIndex::ConditionalZero, false)),
        // D4: (x^2 - 1)(x^2 - t^k)(t^k x^2 - 1)
        (Dihedral(2), 2) => k_any().map(|_| indices(2, ThirdIndex::Exact(0), false)),
        // Z4: x (x^4 - t^k), k = 1, 2
        (Cyclic(4), 1) => k_in(1, 2).map(|_| indices(5, ThirdIndex::Exact(0), false)),
        // Z3: (x^3 - t^k1)(t^k2 x^3 - a(t))
        (Cyclic(3), 1) => k_any().map(|_| indices(4, ThirdIndex::ConditionalZero, false)),
        // Z3: x^6 + a(t) x^3 + t^k, 1 <= k <= 3
        (Cyclic(3), 2) => k_in(1, 3).map(|_| indices(5, ThirdIndex::ConditionalZero, false)),
        // Z3: (x^3 - b - t^k1)(x^3 - b - t^k2 a(t))
        (Cyclic(3), 3) => k_any().map(|_| indices(6, ThirdIndex::Exact(0), false)),
        // Z3: (x^3 - t^k)(x^3 - a(t)), 1 <= k <= 3
        (Cyclic(3), 4) => k_in(1, 3).map(|_| indices(2, ThirdIndex::Exact(0), false)),
        // Z3: three conjugate quadratic factors
        (Cyclic(3), 5) => k_any().map(|_| indices(3, ThirdIndex::Exact(0), false)),
        _ => Err(unknown()),
    }
}

/// Fill in the default exponent `k = 1` for rows that take one, so that a
/// user description may omit it.
pub fn normalize(case: &GermCase) -> GermCase {
    if case.k.is_none() && case.case_id != 0 {
        GermCase { k: Some(1), ..*case }
    } else {
        *case
    }
}

/// Per-fiber bound when a 3-element fiberwise group fixes a fiber with a
/// 3-point orbit in the branch: `s2(F) >= 3|H|`.
pub fn z3_fixed_fiber_s2_min(h_order: u64) -> u64 {
    3 * h_order
}

/// Row of the order/index summary table: the fiberwise group, its lifted
/// order, the least `s2(F0)` over the group's negligible configurations, and
/// the resulting largest ratio `|K|/s2(F0)` as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub group: FiniteMobiusGroup,
    pub lift_order: u64,
    pub s2_min: u32,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub max_ratio: Rat,
}

/// The eight-row summary: `D6, Z6, Z5, D4, Z4, Z3, Z2, 1`. The maximum ratio
/// over all rows is 4; restricted to `Z6, Z5, Z4, 1` it is 5/2.
pub fn ratio_table() -> Vec<RatioRow> {
    use FiniteMobiusGroup::*;
    let rows = [
        (Dihedral(3), 3),
        (Cyclic(6), 5),
        (Cyclic(5), 4),
        (Dihedral(2), 2),
        (Cyclic(4), 5),
        (Cyclic(3), 2),
        (Cyclic(2), 1),
        (Cyclic(1), 1),
    ];
    rows.iter()
        .map(|&(group, s2_min)| {
            let lifted = lift_order(group.order());
            RatioRow {
                group,
                lift_order: lifted,
                s2_min,
                max_ratio: rat(lifted as i64, i64::from(s2_min)),
            }
        })
        .collect()
}

/// One factor of a squarefree branch equation over the disk, with the unit
/// coefficients left generic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchFactor {
    /// `x^a - c*t^b` with `c(0) != 0`: the `a` roots have `t`-valuation `b/a`.
    Monic { x_exp: u32, t_exp: u32 },
    /// `t^b * x^a - c` with `c(0) != 0`: the roots have valuation `-b/a`.
    Inverted { x_exp: u32, t_exp: u32 },
    /// The coordinate section `x = 0`.
    Axis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum RootVal {
    Finite(Rat),
    Infinite,
}

impl BranchFactor {
    fn degree(&self) -> i64 {
        match *self {
            BranchFactor::Monic { x_exp, .. } | BranchFactor::Inverted { x_exp, .. } => {
                i64::from(x_exp)
            }
            BranchFactor::Axis => 1,
        }
    }

    fn leading_coeff_valuation(&self) -> i64 {
        match *self {
            BranchFactor::Inverted { t_exp, .. } => i64::from(t_exp),
            _ => 0,
        }
    }

    fn root_valuation(&self) -> RootVal {
        match *self {
            BranchFactor::Monic { x_exp, t_exp } => {
                RootVal::Finite(rat(i64::from(t_exp), i64::from(x_exp)))
            }
            BranchFactor::Inverted { x_exp, t_exp } => {
                RootVal::Finite(rat(-i64::from(t_exp), i64::from(x_exp)))
            }
            BranchFactor::Axis => RootVal::Infinite,
        }
    }

    /// `t`-valuation of the factor's own discriminant:
    /// `disc(x^a - c t^b) = ±a^a (c t^b)^(a-1)`, and symmetrically for the
    /// inverted form.
    fn disc_valuation(&self) -> i64 {
        match *self {
            BranchFactor::Monic { x_exp, t_exp } | BranchFactor::Inverted { x_exp, t_exp } => {
                i64::from(t_exp) * (i64::from(x_exp) - 1)
            }
            BranchFactor::Axis => 0,
        }
    }
}

/// `t`-valuation of `Res(f, g)` for two distinct factors with generic units:
/// leading-coefficient contributions plus one `min` of root valuations per
/// root pair.
fn resultant_valuation(f: &BranchFactor, g: &BranchFactor) -> Rat {
    let lc = f.leading_coeff_valuation() * g.degree() + g.leading_coeff_valuation() * f.degree();
    let pairs = f.degree() * g.degree();
    let pair_val = match (f.root_valuation(), g.root_valuation()) {
        (RootVal::Finite(a), RootVal::Finite(b)) => a.min(b),
        (RootVal::Finite(a), RootVal::Infinite) | (RootVal::Infinite, RootVal::Finite(a)) => a,
        (RootVal::Infinite, RootVal::Infinite) => unreachable!("two axis factors"),
    };
    Rat::from_integer(lc) + Rat::from_integer(pairs) * pair_val
}

/// `t`-adic valuation of the `x`-discriminant of the product of the given
/// factors, via `disc(fg) = disc(f) disc(g) Res(f, g)^2`.
///
/// This is a sanity oracle for the classification table, not a computation of
/// `s2` (which also involves normalization-genus corrections). Unit
/// coefficients are assumed generic; the only detectable coincidence is a
/// repeated `x = 0` section, which is rejected.
pub fn discriminant_valuation(factors: &[BranchFactor]) -> Result<u64, GermError> {
    let axes = factors
        .iter()
        .filter(|f| matches!(f, BranchFactor::Axis))
        .count();
    if axes > 1 {
        return Err(GermError::NotSquarefree);
    }
    let mut total = Rat::from_integer(0);
    for (i, f) in factors.iter().enumerate() {
        total += Rat::from_integer(f.disc_valuation());
        for g in &factors[i + 1..] {
            total += Rat::from_integer(2) * resultant_valuation(f, g);
        }
    }
    debug_assert!(total.is_integer() && total >= Rat::from_integer(0));
    Ok(total.to_integer() as u64)
}

/// A full table row for export: the case family, its `k` range, the indices,
/// and the oracle factorization at `k = 1` where the local equation is a
/// literal product of binomials.
#[derive(Debug, Clone, Serialize)]
pub struct GermRow {
    pub group: FiniteMobiusGroup,
    pub case_id: u8,
    pub k_range: &'static str,
    pub equation: &'static str,
    pub s2_min: u32,
    pub s3: ThirdIndex,
    pub exact: bool,
    pub oracle_factors: Option<Vec<BranchFactor>>,
    pub oracle_valuation: Option<u64>,
}

type RawGermRow = (
    FiniteMobiusGroup,
    u8,
    &'static str,
    &'static str,
    Option<u32>,
    Option<Vec<BranchFactor>>,
);

/// All classified rows, with the `Z6` family split at `k = 3` where the
/// indices change.
pub fn classification_table() -> Vec<GermRow> {
    use BranchFactor::*;
    use FiniteMobiusGroup::*;
    let sections = Some(vec![Monic { x_exp: 1, t_exp: 0 }; 6]);
    let raw: Vec<RawGermRow> = vec![
        (
            Octahedral,
            0,
            "-",
            "F0 + 6 etale sections",
            None,
            sections.clone(),
        ),
        (
            Tetrahedral,
            0,
            "-",
            "F0 + 6 etale sections",
            None,
            sections.clone(),
        ),
        (Dihedral(6), 0, "-", "F0 + 6 etale sections", None, sections),
        (
            Dihedral(3),
            1,
            "k >= 1",
            "(x^3 - t^k)(t^k x^3 - 1)",
            Some(1),
            Some(vec![
                Monic { x_exp: 3, t_exp: 1 },
                Inverted { x_exp: 3, t_exp: 1 },
            ]),
        ),
        (
            Dihedral(3),
            2,
            "k >= 1",
            "(x^3 - 1)^2 - t^k (x^3 + 1)^2",
            Some(1),
            None,
        ),
        (
            Cyclic(6),
            1,
            "1 <= k <= 2",
            "x^6 - t^k",
            Some(1),
            Some(vec![Monic { x_exp: 6, t_exp: 1 }]),
        ),
        (Cyclic(6), 1, "k = 3", "x^6 - t^3", Some(3), None),
        (
            Cyclic(5),
            1,
            "k = 1, 2",
            "x (x^5 - t^k)",
            Some(1),
            Some(vec![Axis, Monic { x_exp: 5, t_exp: 1 }]),
        ),
        (
            Cyclic(5),
            2,
            "k = 1, 2",
            "x (t^k x^5 - 1)",
            Some(1),
            Some(vec![Axis, Inverted { x_exp: 5, t_exp: 1 }]),
        ),
        (
            Dihedral(2),
            1,
            "k >= 1",
            "(x^2 - 1)((x-1)^2 - t^k (x+1)^2)(t^k (x-1)^2 - (x+1)^2)",
            Some(1),
            None,
        ),
        (
            Dihedral(2),
            2,
            "k >= 1",
            "(x^2 - 1)(x^2 - t^k)(t^k x^2 - 1)",
            Some(1),
            Some(vec![
                Monic { x_exp: 2, t_exp: 0 },
                Monic { x_exp: 2, t_exp: 1 },
                Inverted { x_exp: 2, t_exp: 1 },
            ]),
        ),
        (
            Cyclic(4),
            1,
            "k = 1, 2",
            "x (x^4 - t^k)",
            Some(1),
            Some(vec![Axis, Monic { x_exp: 4, t_exp: 1 }]),
        ),
        (
            Cyclic(3),
            1,
            "k1, k2 >= 1",
            "(x^3 - t^k1)(t^k2 x^3 - a(t))",
            Some(1),
            Some(vec![
                Monic { x_exp: 3, t_exp: 1 },
                Inverted { x_exp: 3, t_exp: 1 },
            ]),
        ),
        (
            Cyclic(3),
            2,
            "1 <= k <= 3",
            "x^6 + a(t) x^3 + t^k",
            Some(1),
            None,
        ),
        (
            Cyclic(3),
            3,
            "k1, k2 >= 1",
            "(x^3 - b - t^k1)(x^3 - b - t^k2 a(t))",
            Some(1),
            None,
        ),
        (
            Cyclic(3),
            4,
            "1 <= k <= 3",
            "(x^3 - t^k)(x^3 - a(t))",
            Some(1),
            Some(vec![
                Monic { x_exp: 3, t_exp: 1 },
                Monic { x_exp: 3, t_exp: 0 },
            ]),
        ),
        (
            Cyclic(3),
            5,
            "k >= 1",
            "three conjugate quadratics in x^3 - b",
            Some(1),
            None,
        ),
    ];
    raw.into_iter()
        .map(|(group, case_id, k_range, equation, k, oracle_factors)| {
            let indices = classify(&GermCase::new(group, case_id, k)).expect("table row");
            let oracle_valuation = oracle_factors
                .as_ref()
                .map(|f| discriminant_valuation(f).expect("table oracle"));
            GermRow {
                group,
                case_id,
                k_range,
                equation,
                s2_min: indices.s2_min,
                s3: indices.s3,
                exact: indices.exact,
                oracle_factors,
                oracle_valuation,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;
    use proptest::prelude::*;
    use BranchFactor::*;
    use FiniteMobiusGroup::*;

    #[test]
    fn classify_reference_rows() {
        let z6k3 = classify(&GermCase::new(Cyclic(6), 1, Some(3))).unwrap();
        assert_eq!(z6k3.s2_min, 3);
        assert_eq!(z6k3.s3, ThirdIndex::Exact(1));
        assert!(z6k3.exact);

        let fiber = classify(&GermCase::new(Octahedral, 0, None)).unwrap();
        assert_eq!(fiber.s2_min, 10);
        assert_eq!(fiber.s3, ThirdIndex::Exact(0));
        assert!(fiber.exact);

        let z4 = classify(&GermCase::new(Cyclic(4), 1, Some(1))).unwrap();
        assert_eq!(z4.s2_min, 5);
        assert_eq!(z4.s3, ThirdIndex::Exact(0));
        assert!(!z4.exact);
    }

    #[test]
    fn classify_rejects_out_of_range() {
        assert!(classify(&GermCase::new(Cyclic(6), 1, Some(4))).is_err());
        assert!(classify(&GermCase::new(Cyclic(5), 1, Some(3))).is_err());
        assert!(classify(&GermCase::new(Cyclic(2), 1, Some(1))).is_err());
        assert!(classify(&GermCase::new(Octahedral, 0, Some(1))).is_err());
        assert!(classify(&GermCase::new(Icosahedral, 0, None)).is_err());
        assert!(classify(&GermCase::new(Cyclic(3), 6, Some(1))).is_err());
    }

    #[test]
    fn only_the_z6_k3_row_has_positive_third_index() {
        for row in classification_table() {
            if let ThirdIndex::Exact(v) = row.s3 {
                if v > 0 {
                    assert_eq!((row.group, row.case_id), (Cyclic(6), 1));
                }
            }
        }
    }

    #[test]
    fn ratio_table_matches_summary() {
        let table = ratio_table();
        let expected = [
            (Dihedral(3), 12, 3, rint(4)),
            (Cyclic(6), 12, 5, rat(12, 5)),
            (Cyclic(5), 10, 4, rat(5, 2)),
            (Dihedral(2), 8, 2, rint(4)),
            (Cyclic(4), 8, 5, rat(8, 5)),
            (Cyclic(3), 6, 2, rint(3)),
            (Cyclic(2), 4, 1, rint(4)),
            (Cyclic(1), 2, 1, rint(2)),
        ];
        assert_eq!(table.len(), expected.len());
        for (row, (group, lifted, s2, ratio)) in table.iter().zip(expected) {
            assert_eq!(row.group, group);
            assert_eq!(row.lift_order, lifted);
            assert_eq!(row.s2_min, s2);
            assert_eq!(row.max_ratio, ratio);
            assert_eq!(row.max_ratio, rat(row.lift_order as i64, i64::from(row.s2_min)));
        }
        let max = table.iter().map(|r| r.max_ratio).max().unwrap();
        assert_eq!(max, rint(4));
        let restricted = [Cyclic(6), Cyclic(5), Cyclic(4), Cyclic(1)];
        let max_r = table
            .iter()
            .filter(|r| restricted.contains(&r.group))
            .map(|r| r.max_ratio)
            .max()
            .unwrap();
        assert_eq!(max_r, rat(5, 2));
    }

    #[test]
    fn ratio_table_consistent_with_classified_rows() {
        // each group's table s2 is the min over its negligible rows
        for row in ratio_table() {
            let mins: Vec<u32> = classification_table()
                .into_iter()
                .filter(|r| r.group == row.group && r.s3.value() == 0)
                .map(|r| r.s2_min)
                .collect();
            if !mins.is_empty() {
                assert_eq!(row.s2_min, mins.into_iter().min().unwrap(), "{}", row.group);
            }
        }
    }

    #[test]
    fn z3_fixed_fiber_bound() {
        assert_eq!(z3_fixed_fiber_s2_min(4), 12);
        assert_eq!(z3_fixed_fiber_s2_min(1), 3);
        assert_eq!(z3_fixed_fiber_s2_min(10), 30);
    }

    #[test]
    fn discriminant_reference_values() {
        // disc(x^6 - t) = ±6^6 t^5
        assert_eq!(
            discriminant_valuation(&[Monic { x_exp: 6, t_exp: 1 }]).unwrap(),
            5
        );
        // disc(x (x^5 - t)): 4 from disc(x^5 - t) plus twice Res(x, x^5 - t) = -t
        assert_eq!(
            discriminant_valuation(&[Axis, Monic { x_exp: 5, t_exp: 1 }]).unwrap(),
            6
        );
        // disc((x - t)(x + t)) = 4 t^2
        assert_eq!(
            discriminant_valuation(&[
                Monic { x_exp: 1, t_exp: 1 },
                Monic { x_exp: 1, t_exp: 1 },
            ])
            .unwrap(),
            2
        );
    }

    #[test]
    fn discriminant_rejects_repeated_axis() {
        assert_eq!(
            discriminant_valuation(&[Axis, Axis]),
            Err(GermError::NotSquarefree)
        );
    }

    #[test]
    fn table_oracle_values_frozen() {
        let by_case: Vec<(FiniteMobiusGroup, u8, Option<u64>)> = classification_table()
            .into_iter()
            .map(|r| (r.group, r.case_id, r.oracle_valuation))
            .collect();
        let expect = [
            (Octahedral, 0, Some(0)),
            (Tetrahedral, 0, Some(0)),
            (Dihedral(6), 0, Some(0)),
            (Dihedral(3), 1, Some(4)),
            (Dihedral(3), 2, None),
            (Cyclic(6), 1, Some(5)),
            (Cyclic(6), 1, None),
            (Cyclic(5), 1, Some(6)),
            (Cyclic(5), 2, Some(4)),
            (Dihedral(2), 1, None),
            (Dihedral(2), 2, Some(2)),
            (Cyclic(4), 1, Some(5)),
            (Cyclic(3), 1, Some(4)),
            (Cyclic(3), 2, None),
            (Cyclic(3), 3, None),
            (Cyclic(3), 4, Some(2)),
            (Cyclic(3), 5, None),
        ];
        assert_eq!(by_case.len(), expect.len());
        for (got, want) in by_case.iter().zip(expect) {
            assert_eq!(*got, want);
        }
    }

    fn factor_strategy() -> impl Strategy<Value = BranchFactor> {
        prop_oneof![
            (1u32..6, 0u32..5).prop_map(|(a, b)| Monic { x_exp: a, t_exp: b }),
            (1u32..6, 0u32..5).prop_map(|(a, b)| Inverted { x_exp: a, t_exp: b }),
        ]
    }

    proptest! {
        #[test]
        fn valuation_additive_over_splits(
            left in prop::collection::vec(factor_strategy(), 1..4),
            right in prop::collection::vec(factor_strategy(), 1..4),
        ) {
            // val disc(fg) = val disc(f) + val disc(g) + 2 val Res(f, g)
            let mut all = left.clone();
            all.extend(right.iter().copied());
            let whole = discriminant_valuation(&all).unwrap() as i64;
            let l = discriminant_valuation(&left).unwrap() as i64;
            let r = discriminant_valuation(&right).unwrap() as i64;
            let mut cross = rint(0);
            for f in &left {
                for g in &right {
                    cross += resultant_valuation(f, g);
                }
            }
            prop_assert!(cross.is_integer());
            prop_assert_eq!(whole, l + r + 2 * cross.to_integer());
        }

        #[test]
        fn classify_total_on_declared_set(
            group_idx in 0usize..7,
            case_id in 0u8..8,
            k in prop::option::of(0u32..6),
        ) {
            let group = [
                Cyclic(3), Cyclic(4), Cyclic(5), Cyclic(6),
                Dihedral(2), Dihedral(3), Octahedral,
            ][group_idx];
            let case = GermCase::new(group, case_id, k);
            let declared = matches!(
                (group, case_id),
                (Octahedral | Tetrahedral | Dihedral(6), 0)
                    | (Dihedral(3), 1 | 2)
                    | (Cyclic(6), 1)
                    | (Cyclic(5), 1 | 2)
                    | (Dihedral(2), 1 | 2)
                    | (Cyclic(4), 1)
                    | (Cyclic(3), 1..=5)
            );
            let k_ok = match (group, case_id) {
                (_, 0) => k.is_none(),
                (Cyclic(6), 1) | (Cyclic(3), 2 | 4) => matches!(k, Some(1..=3)),
                (Cyclic(5), _) | (Cyclic(4), _) => matches!(k, Some(1..=2)),
                _ => matches!(k, Some(v) if v >= 1),
            };
            prop_assert_eq!(classify(&case).is_ok(), declared && k_ok);
        }
    }
}
