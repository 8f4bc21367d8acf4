//! Line-oriented scenario format describing a fibration, and the analysis
//! pipeline turning a scenario into invariants and bound verdicts.
//!
//! Grammar (one item per line, `#` starts a comment):
//!
//! ```text
//! base_genus = 0                 # required
//! group = full                   # required: full | abelian | cyclic
//! surface = product              # optional: product | hirzebruch:<e>
//! branch = 6,12                  # optional divisor class a,b
//! s2 = 120                       # optional budget override
//! s3 = 0                         # optional budget override
//! locally_trivial = false        # optional; derived from the budget if absent
//! minimal = false                # optional; defaults to false
//! germ group=O24 case=0 count=12 [k=<int>] [orbit=big|fixed:<int>]
//! ```
//!
//! Germ lines may repeat; other keys may not. Unknown keys are rejected.
//! When both germ lines and `s2`/`s3` overrides are present the overrides
//! win and a warning is attached to the report.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bounds::{self, BoundVerdict, BoundsError, GroupKind};
use crate::germs::{self, GermCase};
use crate::invariants::{self, NonIntegral, SingularityBudget};
use crate::ruled_surface::{DivisorClass, RuledSurfaceModel, SurfaceKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    NonIntegral(#[from] NonIntegral),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Orbit annotation on a germ line: the fiber sits in a free orbit or is
/// fixed by a stabilizer of the given order. Descriptive only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GermOrbit {
    Big,
    Fixed(u64),
}

impl fmt::Display for GermOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermOrbit::Big => f.write_str("big"),
            GermOrbit::Fixed(n) => write!(f, "fixed:{n}"),
        }
    }
}

impl FromStr for GermOrbit {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "big" {
            return Ok(GermOrbit::Big);
        }
        if let Some(n) = s.strip_prefix("fixed:") {
            let n: u64 = n.parse().map_err(|_| format!("bad stabilizer order `{n}`"))?;
            if n == 0 {
                return Err("stabilizer order must be positive".into());
            }
            return Ok(GermOrbit::Fixed(n));
        }
        Err(format!("bad orbit `{s}` (expected big or fixed:<int>)"))
    }
}

impl Serialize for GermOrbit {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GermOrbit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermLine {
    pub case: GermCase,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<GermOrbit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationScenario {
    pub base_genus: u32,
    pub group: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<RuledSurfaceModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<DivisorClass>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub germs: Vec<GermLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2_override: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s3_override: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locally_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn column_of(raw: &str, needle: &str) -> usize {
    raw.find(needle)
        .map(|byte| raw[..byte].chars().count() + 1)
        .unwrap_or(1)
}

fn parse_germ_line(raw: &str, line_no: usize) -> Result<GermLine, ScenarioError> {
    let mut group = None;
    let mut case_id = None;
    let mut k = None;
    let mut count = None;
    let mut orbit = None;
    for token in raw.split_whitespace().skip(1) {
        let col = column_of(raw, token);
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| syntax(line_no, col, format!("expected key=value, got `{token}`")))?;
        let dup = |set: bool| -> Result<(), ScenarioError> {
            if set {
                Err(syntax(line_no, col, format!("duplicate germ key `{key}`")))
            } else {
                Ok(())
            }
        };
        match key {
            "group" => {
                dup(group.is_some())?;
                const ALLOWED: [&str; 10] =
                    ["Z2", "Z3", "Z4", "Z5", "Z6", "D4", "D6", "D12", "T12", "O24"];
                if !ALLOWED.contains(&value) {
                    return Err(syntax(line_no, col, format!("unknown germ group `{value}`")));
                }
                group = Some(value.parse().expect("symbol just checked"));
            }
            "case" => {
                dup(case_id.is_some())?;
                let v: u8 = value
                    .parse()
                    .map_err(|_| syntax(line_no, col, format!("bad case `{value}`")))?;
                case_id = Some(v);
            }
            "k" => {
                dup(k.is_some())?;
                let v: u32 = value
                    .parse()
                    .map_err(|_| syntax(line_no, col, format!("bad k `{value}`")))?;
                if v == 0 {
                    return Err(syntax(line_no, col, "k must be positive"));
                }
                k = Some(v);
            }
            "count" => {
                dup(count.is_some())?;
                let v: u64 = value
                    .parse()
                    .map_err(|_| syntax(line_no, col, format!("bad count `{value}`")))?;
                if v == 0 {
                    return Err(syntax(line_no, col, "count must be positive"));
                }
                count = Some(v);
            }
            "orbit" => {
                dup(orbit.is_some())?;
                orbit = Some(
                    value
                        .parse::<GermOrbit>()
                        .map_err(|e| syntax(line_no, col, e))?,
                );
            }
            _ => return Err(syntax(line_no, col, format!("unknown germ key `{key}`"))),
        }
    }
    let group = group.ok_or_else(|| syntax(line_no, 1, "germ line needs group=..."))?;
    let case_id = case_id.ok_or_else(|| syntax(line_no, 1, "germ line needs case=..."))?;
    let count = count.ok_or_else(|| syntax(line_no, 1, "germ line needs count=..."))?;
    Ok(GermLine {
        case: germs::normalize(&GermCase::new(group, case_id, k)),
        count,
        orbit,
    })
}

/// Parse a scenario description. Syntax errors carry line and column;
/// accepting a scenario guarantees every germ line is a classified
/// configuration.
pub fn parse(text: &str) -> Result<FibrationScenario, ScenarioError> {
    let mut base_genus = None;
    let mut group = None;
    let mut surface = None;
    let mut branch = None;
    let mut s2 = None;
    let mut s3 = None;
    let mut locally_trivial = None;
    let mut minimal = None;
    let mut germ_lines = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw_line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let first_token = body.split_whitespace().next().unwrap_or("");
        if first_token == "germ" {
            germ_lines.push(parse_germ_line(body, line_no)?);
            continue;
        }
        let Some((key_part, value_part)) = body.split_once('=') else {
            return Err(syntax(line_no, 1, "expected `key = value`"));
        };
        let key = key_part.trim();
        let value = value_part.trim();
        let key_col = column_of(raw_line, key);
        let value_col = column_of(raw_line, value).max(key_col + 1);
        let bad_value =
            |msg: String| -> ScenarioError { syntax(line_no, value_col, msg) };
        macro_rules! set_once {
            ($slot:ident, $parsed:expr) => {{
                if $slot.is_some() {
                    return Err(syntax(line_no, key_col, format!("duplicate key `{key}`")));
                }
                $slot = Some($parsed);
            }};
        }
        match key {
            "base_genus" => set_once!(
                base_genus,
                value
                    .parse::<u32>()
                    .map_err(|_| bad_value(format!("bad base_genus `{value}`")))?
            ),
            "group" => set_once!(
                group,
                match value {
                    "full" => GroupKind::Full,
                    "abelian" => GroupKind::Abelian,
                    "cyclic" => GroupKind::Cyclic,
                    _ => return Err(bad_value(format!("bad group `{value}`"))),
                }
            ),
            "surface" => set_once!(surface, {
                if value == "product" {
                    SurfaceKind::Product
                } else if let Some(e) = value.strip_prefix("hirzebruch:") {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| bad_value(format!("bad invariant `{e}`")))?;
                    SurfaceKind::Hirzebruch { e }
                } else {
                    return Err(bad_value(format!("bad surface `{value}`")));
                }
            }),
            "branch" => set_once!(branch, {
                let (a, b) = value
                    .split_once(',')
                    .ok_or_else(|| bad_value("branch expects `a,b`".to_string()))?;
                let a: i64 = a
                    .trim()
                    .parse()
                    .map_err(|_| bad_value(format!("bad coefficient `{a}`")))?;
                let b: i64 = b
                    .trim()
                    .parse()
                    .map_err(|_| bad_value(format!("bad coefficient `{b}`")))?;
                DivisorClass::new(a, b)
            }),
            "s2" => set_once!(
                s2,
                value
                    .parse::<u64>()
                    .map_err(|_| bad_value(format!("bad s2 `{value}`")))?
            ),
            "s3" => set_once!(
                s3,
                value
                    .parse::<u64>()
                    .map_err(|_| bad_value(format!("bad s3 `{value}`")))?
            ),
            "locally_trivial" => set_once!(
                locally_trivial,
                value
                    .parse::<bool>()
                    .map_err(|_| bad_value(format!("bad boolean `{value}`")))?
            ),
            "minimal" => set_once!(
                minimal,
                value
                    .parse::<bool>()
                    .map_err(|_| bad_value(format!("bad boolean `{value}`")))?
            ),
            _ => return Err(syntax(line_no, key_col, format!("unknown key `{key}`"))),
        }
    }

    let base_genus =
        base_genus.ok_or_else(|| syntax(0, 0, "missing required key `base_genus`"))?;
    let group = group.ok_or_else(|| syntax(0, 0, "missing required key `group`"))?;

    // no unclassified germ can get past parse
    for line in &germ_lines {
        if let Err(e) = germs::classify(&line.case) {
            return Err(ScenarioError::Semantic(e.to_string()));
        }
    }

    Ok(FibrationScenario {
        base_genus,
        group,
        surface: surface.map(|kind| RuledSurfaceModel { base_genus, kind }),
        branch,
        germs: germ_lines,
        s2_override: s2,
        s3_override: s3,
        locally_trivial,
        minimal,
    })
}

/// Canonical serialization; `parse(to_fib(s)) == s` for every scenario
/// produced by [`parse`].
pub fn to_fib(s: &FibrationScenario) -> String {
    let mut out = String::new();
    out.push_str(&format!("base_genus = {}\n", s.base_genus));
    if let Some(surface) = &s.surface {
        match surface.kind {
            SurfaceKind::Product => out.push_str("surface = product\n"),
            SurfaceKind::Hirzebruch { e } => out.push_str(&format!("surface = hirzebruch:{e}\n")),
        }
    }
    if let Some(b) = s.branch {
        out.push_str(&format!("branch = {},{}\n", b.a, b.b));
    }
    if let Some(v) = s.s2_override {
        out.push_str(&format!("s2 = {v}\n"));
    }
    if let Some(v) = s.s3_override {
        out.push_str(&format!("s3 = {v}\n"));
    }
    out.push_str(&format!("group = {}\n", s.group));
    if let Some(v) = s.locally_trivial {
        out.push_str(&format!("locally_trivial = {v}\n"));
    }
    if let Some(v) = s.minimal {
        out.push_str(&format!("minimal = {v}\n"));
    }
    for line in &s.germs {
        out.push_str(&format!(
            "germ group={} case={}",
            line.case.group, line.case.case_id
        ));
        if let Some(k) = line.case.k {
            out.push_str(&format!(" k={k}"));
        }
        out.push_str(&format!(" count={}", line.count));
        if let Some(orbit) = line.orbit {
            out.push_str(&format!(" orbit={orbit}"));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub s2: u64,
    pub s3: u64,
    /// `override`, `germs`, or `assumed-trivial`.
    pub source: String,
    /// Set when the budget was assembled from lower bounds, making the
    /// reported invariants lower bounds too.
    pub lower_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub ksq_rel: u64,
    pub chi_f: u64,
    pub n: u64,
    pub ksq: i64,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: FibrationScenario,
    pub budget: BudgetReport,
    pub invariants: InvariantReport,
    pub verdicts: Vec<BoundVerdict>,
    pub warnings: Vec<String>,
}

/// Derive the budget, compute invariants, and evaluate every applicable
/// bound. Local triviality is always re-derived from the budget; an explicit
/// flag only cross-checks it.
pub fn analyze(s: &FibrationScenario) -> Result<ScenarioReport, AnalyzeError> {
    let mut warnings = Vec::new();

    let budget = if s.s2_override.is_some() || s.s3_override.is_some() {
        if !s.germs.is_empty() {
            warnings.push(
                "both germ lines and s2/s3 overrides given; the overrides win".to_string(),
            );
        }
        BudgetReport {
            s2: s.s2_override.unwrap_or(0),
            s3: s.s3_override.unwrap_or(0),
            source: "override".to_string(),
            lower_bound: false,
        }
    } else if !s.germs.is_empty() {
        let mut s2 = 0u64;
        let mut s3 = 0u64;
        let mut lower_bound = false;
        let mut conditional = false;
        for line in &s.germs {
            let idx = germs::classify(&line.case).expect("validated by parse");
            s2 += u64::from(idx.s2_min) * line.count;
            s3 += u64::from(idx.s3.value()) * line.count;
            lower_bound |= !idx.exact;
            conditional |= idx.s3.is_conditional();
        }
        if lower_bound {
            warnings.push(
                "budget uses per-fiber lower bounds; the reported K^2 is a lower bound"
                    .to_string(),
            );
        }
        if conditional {
            warnings.push(
                "some germ rows assume s3 = 0; configurations with s3 > 0 need the \
                 third-index stabilizer bound instead"
                    .to_string(),
            );
        }
        BudgetReport {
            s2,
            s3,
            source: "germs".to_string(),
            lower_bound,
        }
    } else {
        if s.locally_trivial != Some(true) {
            warnings.push(
                "no singularity data given; assuming the locally trivial budget (0, 0)"
                    .to_string(),
            );
        }
        BudgetReport {
            s2: 0,
            s3: 0,
            source: "assumed-trivial".to_string(),
            lower_bound: false,
        }
    };

    let b = SingularityBudget::new(budget.s2, budget.s3);
    let rel = invariants::relative_invariants(&b)?;
    let global = invariants::global_invariants(&b, s.base_genus)?;

    let derived_lt = rel.ksq_rel == 0;
    if let Some(flag) = s.locally_trivial {
        if flag != derived_lt {
            warnings.push(format!(
                "locally_trivial = {flag} contradicts the budget (K^2_rel = {}); using the budget",
                rel.ksq_rel
            ));
        }
    }

    let verdicts = bounds::evaluate(
        s.base_genus,
        global.ksq,
        s.group,
        derived_lt,
        s.minimal.unwrap_or(false),
    )?;

    Ok(ScenarioReport {
        scenario: s.clone(),
        budget,
        invariants: InvariantReport {
            ksq_rel: rel.ksq_rel,
            chi_f: rel.chi_f,
            n: rel.n,
            ksq: global.ksq,
            chi: global.chi,
        },
        verdicts,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Deterministic serialization of a report: identical reports yield
/// byte-identical output.
pub fn emit_report(r: &ScenarioReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(r).expect("report serializes");
            bytes.push(b'\n');
            bytes
        }
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "scenario    base_genus={} group={}",
                r.scenario.base_genus, r.scenario.group
            ));
            if let Some(surface) = &r.scenario.surface {
                match surface.kind {
                    SurfaceKind::Product => out.push_str(" surface=product"),
                    SurfaceKind::Hirzebruch { e } => out.push_str(&format!(" surface=hirzebruch:{e}")),
                }
            }
            out.push('\n');
            out.push_str(&format!(
                "budget      s2={} s3={} (source: {}{})\n",
                r.budget.s2,
                r.budget.s3,
                r.budget.source,
                if r.budget.lower_bound { ", lower bounds" } else { "" }
            ));
            out.push_str(&format!(
                "invariants  K^2_rel={} chi_f={} n={} K^2={} chi={}\n",
                r.invariants.ksq_rel,
                r.invariants.chi_f,
                r.invariants.n,
                r.invariants.ksq,
                r.invariants.chi
            ));
            for v in &r.verdicts {
                out.push_str(&format!(
                    "verdict     {:<20} {:>10}  {}{}\n",
                    v.formula,
                    v.value.to_string(),
                    if v.sharp { "sharp  " } else { "       " },
                    v.statement
                ));
            }
            for w in &r.warnings {
                out.push_str(&format!("WARN        {w}\n"));
            }
            out.into_bytes()
        }
    }
}
