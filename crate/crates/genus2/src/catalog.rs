//! Parametric reconstructions of the extremal fibration constructions, with
//! two-way verification of every displayed invariant.
//!
//! Each entry records a branched double cover of a ruled surface (or a
//! locally trivial product family) together with the group orders its
//! construction realizes. Verification computes `K^2` twice (once from the
//! double-cover formula on the ruled surface, once through the singularity
//! budget and the relative-invariant formulas) and checks the realized
//! group order against every applicable bound.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundVerdict, FactorizationConstraint, GroupKind};
use crate::invariants::{self, SingularityBudget};
use crate::pgl2::FiniteMobiusGroup;
use crate::rat::{rint, RatValue};
use crate::ruled_surface::{DivisorClass, RuledSurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("bad parameter for entry {id}: {constraint}")]
    BadParameter { id: String, constraint: String },
    #[error("entry {id} failed {check}: {left} != {right}")]
    Mismatch {
        id: String,
        check: String,
        left: String,
        right: String,
    },
}

/// How the singularity budget of an entry is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetRule {
    /// Horizontal branch etale; each of the `fiber_count` full fibers in the
    /// branch contributes `s2 = 10`.
    EtaleHorizontal,
    /// Smooth horizontal branch ramified over the base; `s2` is the
    /// ramification number `R'(R' + K_{P/C})`.
    SmoothHorizontalRamification,
    /// No singular fibers at all.
    LocallyTrivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedValues {
    pub ksq: i64,
    pub k_order: u64,
    pub h_order: u64,
    pub g_order: u64,
    /// Bound formula this entry's group order matches identically, if any.
    pub bound_name: Option<&'static str>,
    /// Minimal fiber-stabilizer order, for entries listed in the exceptional
    /// registry.
    pub exceptional_r: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub parameters: BTreeMap<String, i64>,
    pub surface: RuledSurfaceModel,
    pub branch: DivisorClass,
    pub fiber_count: u64,
    pub base_genus: u32,
    pub group_kind: GroupKind,
    pub budget_rule: BudgetRule,
    pub locally_trivial: bool,
    pub minimal_surface: bool,
    pub expected: ExpectedValues,
    /// Hypotheses taken as given rather than verified (e.g. that the base is
    /// a curve attaining the 84(g-1) automorphism bound).
    pub assumptions: Vec<&'static str>,
}

fn is_odd_prime(m: i64) -> bool {
    if m < 3 || m % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

const HURWITZ_BASE: &str = "base curve is assumed to attain |Aut(C)| = 84(g-1)";

fn get_param(id: &str, params: &BTreeMap<String, i64>, name: &str) -> Result<i64, CatalogError> {
    params.get(name).copied().ok_or_else(|| CatalogError::BadParameter {
        id: id.to_string(),
        constraint: format!("missing parameter `{name}`"),
    })
}

fn bad(id: &str, constraint: &str) -> CatalogError {
    CatalogError::BadParameter {
        id: id.to_string(),
        constraint: constraint.to_string(),
    }
}

/// Ids of all catalog entries, in presentation order.
pub fn entry_ids() -> Vec<&'static str> {
    vec![
        "5.1",
        "5.2",
        "5.3",
        "5.4",
        "5.5",
        "5.6-dodecahedron",
        "5.6-octahedron",
        "5.6-cube",
        "5.7",
        "5.8+",
        "5.8",
        "5.9",
    ]
}

/// Human-readable parameter requirements per entry, for `examples list`.
pub fn parameter_spec(id: &str) -> Option<&'static str> {
    Some(match id {
        "5.1" | "5.2" => "g >= 2 (base genus, hypothetical 84(g-1)-automorphism curve)",
        "5.3" => "m >= 1 (translation lattice side)",
        "5.4" | "5.6-dodecahedron" | "5.6-octahedron" | "5.6-cube" => "none",
        "5.5" => "m >= 1 (roots of unity; general type needs m >= 5)",
        "5.7" | "5.8+" => "m >= 1 (half the Hirzebruch invariant; general type needs m >= 2)",
        "5.8" => "m odd prime, m != 5",
        "5.9" => "m odd prime, m != 3, 5",
        _ => return None,
    })
}

/// Build one catalog entry from its parameters.
pub fn instantiate(id: &str, params: &BTreeMap<String, i64>) -> Result<CatalogEntry, CatalogError> {
    let entry = |surface: RuledSurfaceModel,
                 branch: DivisorClass,
                 fiber_count: u64,
                 group_kind: GroupKind,
                 budget_rule: BudgetRule,
                 locally_trivial: bool,
                 minimal_surface: bool,
                 expected: ExpectedValues,
                 assumptions: Vec<&'static str>| CatalogEntry {
        id: id.to_string(),
        parameters: params.clone(),
        base_genus: surface.base_genus,
        surface,
        branch,
        fiber_count,
        group_kind,
        budget_rule,
        locally_trivial,
        minimal_surface,
        expected,
        assumptions,
    };

    match id {
        // locally trivial product C x F with a maximal base and maximal fiber
        "5.1" => {
            let g = get_param(id, params, "g")?;
            if g < 2 {
                return Err(bad(id, "g >= 2"));
            }
            Ok(entry(
                RuledSurfaceModel::product(g as u32),
                DivisorClass::new(6, 0),
                0,
                GroupKind::Full,
                BudgetRule::LocallyTrivial,
                true,
                true,
                ExpectedValues {
                    ksq: 8 * (g - 1),
                    k_order: 48,
                    h_order: 84 * (g - 1) as u64,
                    g_order: 4032 * (g - 1) as u64,
                    bound_name: Some("full-504K2"),
                    exceptional_r: None,
                },
                vec![HURWITZ_BASE],
            ))
        }
        // 12(g-1) full fibers over an orbit of a maximal base, octahedral
        // 6-point set in the fiber direction
        "5.2" => {
            let g = get_param(id, params, "g")?;
            if g < 2 {
                return Err(bad(id, "g >= 2"));
            }
            let m = 12 * (g - 1) as u64;
            Ok(entry(
                RuledSurfaceModel::product(g as u32),
                DivisorClass::new(6, m as i64),
                m,
                GroupKind::Full,
                BudgetRule::EtaleHorizontal,
                false,
                false,
                ExpectedValues {
                    ksq: 32 * (g - 1),
                    k_order: 48,
                    h_order: 84 * (g - 1) as u64,
                    g_order: 4032 * (g - 1) as u64,
                    bound_name: Some("full-126K2"),
                    exceptional_r: None,
                },
                vec![
                    HURWITZ_BASE,
                    "the base carries an orbit of exactly 12(g-1) points",
                ],
            ))
        }
        // elliptic base with j = 0, m^2 translation orbit
        "5.3" => {
            let m = get_param(id, params, "m")?;
            if m < 1 {
                return Err(bad(id, "m >= 1"));
            }
            let f = (m * m) as u64;
            Ok(entry(
                RuledSurfaceModel::product(1),
                DivisorClass::new(6, m * m),
                f,
                GroupKind::Full,
                BudgetRule::EtaleHorizontal,
                false,
                false,
                ExpectedValues {
                    ksq: 2 * m * m,
                    k_order: 48,
                    h_order: 6 * f,
                    g_order: 288 * f,
                    bound_name: Some("full-144K2"),
                    exceptional_r: None,
                },
                vec!["an order-6m^2 extension of the translation lattice is taken as given"],
            ))
        }
        // 12 icosahedron vertices over P^1
        "5.4" => Ok(entry(
            RuledSurfaceModel::product(0),
            DivisorClass::new(6, 12),
            12,
            GroupKind::Full,
            BudgetRule::EtaleHorizontal,
            false,
            false,
            ExpectedValues {
                ksq: 16,
                k_order: 48,
                h_order: 60,
                g_order: 2880,
                bound_name: Some("full-120K2+960"),
                exceptional_r: Some(5),
            },
            vec![],
        )),
        // m-th roots of unity over P^1, dihedral symmetry
        "5.5" => {
            let m = get_param(id, params, "m")?;
            if m < 1 {
                return Err(bad(id, "m >= 1"));
            }
            Ok(entry(
                RuledSurfaceModel::product(0),
                DivisorClass::new(6, m),
                m as u64,
                GroupKind::Full,
                BudgetRule::EtaleHorizontal,
                false,
                false,
                ExpectedValues {
                    ksq: 2 * (m - 4),
                    k_order: 48,
                    h_order: 2 * m as u64,
                    g_order: 96 * m as u64,
                    bound_name: Some("full-48K2+384"),
                    exceptional_r: None,
                },
                vec![],
            ))
        }
        "5.6-dodecahedron" => Ok(entry(
            RuledSurfaceModel::product(0),
            DivisorClass::new(6, 20),
            20,
            GroupKind::Full,
            BudgetRule::EtaleHorizontal,
            false,
            false,
            ExpectedValues {
                ksq: 32,
                k_order: 48,
                h_order: 60,
                g_order: 2880,
                bound_name: None,
                exceptional_r: Some(3),
            },
            vec![],
        )),
        "5.6-octahedron" => Ok(entry(
            RuledSurfaceModel::product(0),
            DivisorClass::new(6, 6),
            6,
            GroupKind::Full,
            BudgetRule::EtaleHorizontal,
            false,
            false,
            ExpectedValues {
                ksq: 4,
                k_order: 48,
                h_order: 24,
                g_order: 1152,
                bound_name: Some("full-288K2"),
                exceptional_r: Some(4),
            },
            vec![],
        )),
        "5.6-cube" => Ok(entry(
            RuledSurfaceModel::product(0),
            DivisorClass::new(6, 8),
            8,
            GroupKind::Full,
            BudgetRule::EtaleHorizontal,
            false,
            false,
            ExpectedValues {
                ksq: 8,
                k_order: 48,
                h_order: 24,
                g_order: 1152,
                bound_name: None,
                exceptional_r: Some(3),
            },
            vec![],
        )),
        // smooth sextic branch 6*C0 + 10m*F on the Hirzebruch surface F_{2m}
        "5.7" | "5.8+" => {
            let m = get_param(id, params, "m")?;
            if m < 1 {
                return Err(bad(id, "m >= 1"));
            }
            let abelian = id == "5.7";
            Ok(entry(
                RuledSurfaceModel::hirzebruch(0, 2 * m as u32),
                DivisorClass::new(6, 10 * m),
                0,
                if abelian { GroupKind::Abelian } else { GroupKind::Cyclic },
                BudgetRule::SmoothHorizontalRamification,
                false,
                false,
                ExpectedValues {
                    ksq: 8 * (m - 1),
                    k_order: 10,
                    h_order: if abelian { 10 * m as u64 } else { 10 * m as u64 - 1 },
                    g_order: if abelian { 100 * m as u64 } else { 100 * m as u64 - 10 },
                    bound_name: Some(if abelian {
                        "abelian-12.5K2+100"
                    } else {
                        "cyclic-12.5K2+90"
                    }),
                    exceptional_r: None,
                },
                vec![],
            ))
        }
        // m-point translation orbit on an elliptic base, Z5-symmetric fiber set
        "5.8" => {
            let m = get_param(id, params, "m")?;
            if !is_odd_prime(m) || m == 5 {
                return Err(bad(id, "m must be an odd prime different from 5"));
            }
            Ok(entry(
                RuledSurfaceModel::product(1),
                DivisorClass::new(6, m),
                m as u64,
                GroupKind::Cyclic,
                BudgetRule::EtaleHorizontal,
                false,
                false,
                ExpectedValues {
                    ksq: 2 * m,
                    k_order: 10,
                    h_order: m as u64,
                    g_order: 10 * m as u64,
                    bound_name: Some("cyclic-5K2"),
                    exceptional_r: None,
                },
                vec![],
            ))
        }
        // locally trivial family over the m-cyclic cover of P^1 (genus m-1)
        "5.9" => {
            let m = get_param(id, params, "m")?;
            if !is_odd_prime(m) || m == 5 || m == 3 {
                return Err(bad(id, "m must be an odd prime different from 3 and 5"));
            }
            Ok(entry(
                RuledSurfaceModel::product((m - 1) as u32),
                DivisorClass::new(6, 0),
                0,
                GroupKind::Cyclic,
                BudgetRule::LocallyTrivial,
                true,
                true,
                ExpectedValues {
                    ksq: 8 * (m - 2),
                    k_order: 10,
                    h_order: 3 * m as u64,
                    g_order: 30 * m as u64,
                    bound_name: Some("cyclic-3.75K2+60"),
                    exceptional_r: None,
                },
                vec![],
            ))
        }
        _ => Err(CatalogError::UnknownId(id.to_string())),
    }
}

/// Two-way verification record for one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub parameters: BTreeMap<String, i64>,
    /// `K^2` from the double-cover formula on the ruled surface.
    pub ksq_geometric: i64,
    pub budget: SingularityBudget,
    /// `K^2` from the singularity budget and the invariant formulas.
    pub ksq_from_budget: i64,
    pub g_order: u64,
    pub k_order: u64,
    pub h_order: u64,
    pub verdicts: Vec<BoundVerdict>,
    /// Formula the group order attains exactly, when the entry names one.
    pub attained: Option<String>,
}

impl CatalogEntry {
    /// Singularity budget according to the entry's budget rule.
    pub fn budget(&self) -> SingularityBudget {
        match self.budget_rule {
            BudgetRule::LocallyTrivial => SingularityBudget::new(0, 0),
            BudgetRule::EtaleHorizontal => SingularityBudget::new(10 * self.fiber_count, 0),
            BudgetRule::SmoothHorizontalRamification => {
                let horizontal = self.branch - DivisorClass::new(0, self.fiber_count as i64);
                let k_rel = self.surface.relative_canonical();
                let ram = self.surface.intersect(horizontal, horizontal + k_rel);
                SingularityBudget::new(ram as u64, 0)
            }
        }
    }
}

/// Check every displayed equality of an entry. Any disagreement is a
/// `Mismatch` carrying both sides; shipped entries never produce one.
pub fn verify(e: &CatalogEntry) -> Result<VerificationReport, CatalogError> {
    let mismatch = |check: &str, left: String, right: String| CatalogError::Mismatch {
        id: e.id.clone(),
        check: check.to_string(),
        left,
        right,
    };

    // path (a): geometric double-cover formula
    let ksq_geometric = e
        .surface
        .double_cover_ksq(e.branch)
        .map_err(|err| mismatch("branch class parity", err.to_string(), String::new()))?;

    // path (b): singularity budget through the invariant formulas
    let budget = e.budget();
    let global = invariants::global_invariants(&budget, e.base_genus)
        .map_err(|err| mismatch("budget congruence", err.to_string(), String::new()))?;

    if ksq_geometric != global.ksq {
        return Err(mismatch(
            "K^2 cross-check",
            ksq_geometric.to_string(),
            global.ksq.to_string(),
        ));
    }
    if ksq_geometric != e.expected.ksq {
        return Err(mismatch(
            "expected K^2",
            ksq_geometric.to_string(),
            e.expected.ksq.to_string(),
        ));
    }

    // group order bookkeeping
    let factorization = FactorizationConstraint {
        k_order: e.expected.k_order,
        h_order: e.expected.h_order,
    };
    if factorization.group_order() != e.expected.g_order {
        return Err(mismatch(
            "|G| = |K| |H|",
            factorization.group_order().to_string(),
            e.expected.g_order.to_string(),
        ));
    }
    if e.expected.k_order > bounds::k_order_cap(e.group_kind) {
        return Err(mismatch(
            "kernel cap",
            e.expected.k_order.to_string(),
            bounds::k_order_cap(e.group_kind).to_string(),
        ));
    }

    // the named formula must reproduce |G| exactly at this K^2
    let mut attained = None;
    if let Some(name) = e.expected.bound_name {
        let value = bounds::formula_value(name, ksq_geometric)
            .ok_or_else(|| mismatch("bound formula", name.to_string(), "unknown".to_string()))?;
        if value != rint(e.expected.g_order as i64) {
            return Err(mismatch(
                &format!("|G| = {name}"),
                e.expected.g_order.to_string(),
                value.to_string(),
            ));
        }
        attained = Some(name.to_string());
    }

    // exceptional registry cross-check
    if let Some(r) = e.expected.exceptional_r {
        let h_group = match e.expected.h_order {
            60 => FiniteMobiusGroup::Icosahedral,
            24 => FiniteMobiusGroup::Octahedral,
            other => {
                return Err(mismatch(
                    "exceptional H",
                    other.to_string(),
                    "60 or 24".to_string(),
                ))
            }
        };
        let found = bounds::exceptional_table().into_iter().any(|row| {
            row.h == h_group
                && row.r == r
                && row.g_order == e.expected.g_order
                && row.ksq == ksq_geometric
        });
        if !found {
            return Err(mismatch(
                "exceptional registry",
                format!("({h_group}, r = {r}, |G| = {}, K^2 = {ksq_geometric})", e.expected.g_order),
                "no matching row".to_string(),
            ));
        }
    }

    // |G| against every applicable bound; equality exactly on the named one
    let mut verdicts = Vec::new();
    if ksq_geometric >= 1 {
        verdicts = bounds::evaluate(
            e.base_genus,
            ksq_geometric,
            e.group_kind,
            e.locally_trivial,
            e.minimal_surface,
        )
        .map_err(|err| mismatch("bound applicability", err.to_string(), String::new()))?;
        let g_order = rint(e.expected.g_order as i64);
        for v in &verdicts {
            if g_order > v.value.0 {
                return Err(mismatch(
                    &format!("|G| <= {}", v.formula),
                    e.expected.g_order.to_string(),
                    v.value.to_string(),
                ));
            }
            if Some(v.formula.as_str()) == e.expected.bound_name && g_order != v.value.0 {
                return Err(mismatch(
                    &format!("sharpness of {}", v.formula),
                    e.expected.g_order.to_string(),
                    v.value.to_string(),
                ));
            }
        }
    }

    Ok(VerificationReport {
        id: e.id.clone(),
        parameters: e.parameters.clone(),
        ksq_geometric,
        budget,
        ksq_from_budget: global.ksq,
        g_order: e.expected.g_order,
        k_order: e.expected.k_order,
        h_order: e.expected.h_order,
        verdicts,
        attained,
    })
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// The default parameter sweep: every entry over its admissible small
/// parameter range.
pub fn default_sweep() -> Vec<(String, BTreeMap<String, i64>)> {
    let mut out = Vec::new();
    for g in 2..=6 {
        out.push(("5.1".to_string(), params(&[("g", g)])));
        out.push(("5.2".to_string(), params(&[("g", g)])));
    }
    for m in 1..=10 {
        out.push(("5.3".to_string(), params(&[("m", m)])));
        out.push(("5.5".to_string(), params(&[("m", m)])));
        out.push(("5.7".to_string(), params(&[("m", m)])));
        out.push(("5.8+".to_string(), params(&[("m", m)])));
    }
    for id in ["5.4", "5.6-dodecahedron", "5.6-octahedron", "5.6-cube"] {
        out.push((id.to_string(), BTreeMap::new()));
    }
    for m in [3, 7, 11, 13] {
        out.push(("5.8".to_string(), params(&[("m", m)])));
    }
    for m in [7, 11, 13] {
        out.push(("5.9".to_string(), params(&[("m", m)])));
    }
    out
}

/// Instantiate and verify the whole default sweep.
pub fn verify_sweep() -> Result<Vec<VerificationReport>, CatalogError> {
    default_sweep()
        .into_iter()
        .map(|(id, p)| verify(&instantiate(&id, &p)?))
        .collect()
}

/// Convenience for reporting: the minimum applicable bound value, if any.
pub fn min_verdict(report: &VerificationReport) -> Option<RatValue> {
    report.verdicts.iter().map(|v| v.value).min()
}
