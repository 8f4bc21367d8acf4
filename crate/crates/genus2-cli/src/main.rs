//! Command-line front end for the genus2 library.
//!
//! Exit codes: 0 on success, 2 on parse/usage errors, 3 on semantic or
//! consistency failures.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use genus2::bounds::{self, GroupKind, StabilizerCase};
use genus2::catalog;
use genus2::germs::{self, GermCase};
use genus2::invariants::{self, SingularityBudget};
use genus2::orbifold::{self, JClass, OrbifoldSignature, SearchLimits};
use genus2::rat::RatValue;
use genus2::scenario::{self, ReportFormat, ScenarioError};

#[derive(Parser)]
#[command(name = "genus2", version, about = "Exact invariants and automorphism bounds for genus-2 fibrations")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative and global invariants from a singularity budget
    Invariants(InvariantsArgs),
    /// Classified branch configurations and their indices
    #[command(subcommand)]
    Germ(GermCommand),
    /// Riemann-Hurwitz arithmetic and signature optimization
    #[command(subcommand)]
    Orbifold(OrbifoldCommand),
    /// Cyclic automorphism-order bounds with an optional brute-force check
    Wiman(WimanArgs),
    /// Evaluate bound formulas, stabilizer bounds, or list the exceptions
    Bound(BoundArgs),
    /// The catalog of extremal constructions
    #[command(subcommand)]
    Examples(ExamplesCommand),
    /// Parse and analyze a .fib scenario file
    Check { file: String },
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(long)]
    s2: u64,
    #[arg(long, default_value_t = 0)]
    s3: u64,
    #[arg(long, default_value_t = 0)]
    base_genus: u32,
}

#[derive(Subcommand)]
enum GermCommand {
    /// Print the full classification table
    Table,
    /// Look up one configuration
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        case: u8,
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Subcommand)]
enum OrbifoldCommand {
    /// Covering genus from degree and signature
    Genus {
        #[arg(long)]
        degree: u64,
        #[arg(long, default_value_t = 0)]
        quotient_genus: u32,
        /// Comma-separated periods, e.g. 2,3,7
        #[arg(long, default_value = "")]
        periods: String,
    },
    /// Exhaustive signature minimization
    Minimize {
        #[arg(long)]
        half_term: bool,
        #[arg(long, default_value_t = 0)]
        min_h: u32,
        #[arg(long, default_value_t = 2)]
        max_h: u32,
        #[arg(long, default_value_t = 5)]
        max_periods: usize,
        #[arg(long, default_value_t = 100)]
        max_period: u64,
    },
    /// Smallest orbit of an elliptic-curve automorphism group
    Elliptic {
        #[arg(long)]
        order: u64,
        /// generic | 1728 | 0
        #[arg(long, default_value = "generic")]
        j: String,
    },
    /// Genus from a cyclic quotient with full-period fixed points
    Eq1 {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        quotient_genus: u32,
        #[arg(long)]
        fixed_points: u64,
    },
}

#[derive(Args)]
struct WimanArgs {
    #[arg(long)]
    genus: u32,
    /// Restrict to actions whose point stabilizers all have odd order
    #[arg(long)]
    odd: bool,
    /// Also run the brute-force realizability oracle
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    max_order: Option<u64>,
}

#[derive(Args)]
struct BoundArgs {
    /// Print the four-row exceptional registry
    #[arg(long)]
    exceptions: bool,
    #[arg(long)]
    base_genus: Option<u32>,
    #[arg(long)]
    ksq: Option<i64>,
    /// full | abelian | cyclic
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    locally_trivial: bool,
    #[arg(long)]
    minimal: bool,
    /// Stabilizer bound case: s3-positive | negligible-not-etale | etale |
    /// d4-cyclic | z3-one-orbit | z2-one-orbit
    #[arg(long)]
    stabilizer: Option<String>,
    #[arg(long, default_value_t = 1)]
    r: u64,
    #[arg(long)]
    ksq_rel: Option<u64>,
}

#[derive(Subcommand)]
enum ExamplesCommand {
    /// List catalog entries and their parameters
    List,
    /// Instantiate and verify entries (the whole sweep by default)
    Verify {
        #[arg(long)]
        id: Option<String>,
        /// Repeatable parameter assignment, e.g. --param m=7
        #[arg(long)]
        param: Vec<String>,
    },
}

fn parse_kind(s: &str) -> Result<GroupKind, String> {
    match s {
        "full" => Ok(GroupKind::Full),
        "abelian" => Ok(GroupKind::Abelian),
        "cyclic" => Ok(GroupKind::Cyclic),
        _ => Err(format!("unknown group kind `{s}` (expected full | abelian | cyclic)")),
    }
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn semantic(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants(args) => {
            let budget = SingularityBudget::new(args.s2, args.s3);
            let rel = invariants::relative_invariants(&budget)
                .map_err(|e| semantic(e.to_string()))?;
            let global = invariants::global_invariants(&budget, args.base_genus)
                .map_err(|e| semantic(e.to_string()))?;
            emit(
                cli.json,
                json!({
                    "budget": {"s2": args.s2, "s3": args.s3},
                    "base_genus": args.base_genus,
                    "ksq_rel": rel.ksq_rel,
                    "chi_f": rel.chi_f,
                    "n": rel.n,
                    "ksq": global.ksq,
                    "chi": global.chi,
                }),
                format!(
                    "K^2_rel = {}\nchi_f   = {}\nn       = {}\nK^2     = {}\nchi     = {}\n",
                    rel.ksq_rel, rel.chi_f, rel.n, global.ksq, global.chi
                ),
            );
        }
        Command::Germ(GermCommand::Table) => {
            let table = germs::classification_table();
            let ratios = germs::ratio_table();
            if cli.json {
                emit(
                    true,
                    json!({
                        "version": germs::GERM_TABLE_VERSION,
                        "rows": table,
                        "ratio_table": ratios,
                    }),
                    String::new(),
                );
            } else {
                let mut out = String::new();
                out.push_str(&format!("classification table v{}\n", germs::GERM_TABLE_VERSION));
                for row in &table {
                    out.push_str(&format!(
                        "{:<4} case {} [{}]  s2 {} {:<3} s3 {:<13} {}\n",
                        row.group.to_string(),
                        row.case_id,
                        row.k_range,
                        if row.exact { "=" } else { ">=" },
                        row.s2_min,
                        match row.s3 {
                            germs::ThirdIndex::Exact(v) => format!("= {v}"),
                            germs::ThirdIndex::ConditionalZero => "= 0 (assumed)".into(),
                        },
                        row.equation,
                    ));
                }
                out.push_str("\norder/index ratios\n");
                for r in &ratios {
                    out.push_str(&format!(
                        "{:<4} |K| = {:>2}  s2 >= {}  |K|/s2 <= {}\n",
                        r.group.to_string(),
                        r.lift_order,
                        r.s2_min,
                        r.max_ratio
                    ));
                }
                emit(false, json!({}), out);
            }
        }
        Command::Germ(GermCommand::Classify { group, case, k }) => {
            let group = group
                .parse::<genus2::pgl2::FiniteMobiusGroup>()
                .map_err(usage)?;
            let germ = germs::normalize(&GermCase::new(group, case, k));
            let idx = germs::classify(&germ).map_err(|e| semantic(e.to_string()))?;
            emit(
                cli.json,
                json!({"case": germ, "indices": idx}),
                format!(
                    "s2 {} {}\ns3 {}\n",
                    if idx.exact { "=" } else { ">=" },
                    idx.s2_min,
                    match idx.s3 {
                        germs::ThirdIndex::Exact(v) => format!("= {v}"),
                        germs::ThirdIndex::ConditionalZero => "= 0 (assumed)".into(),
                    }
                ),
            );
        }
        Command::Orbifold(OrbifoldCommand::Genus {
            degree,
            quotient_genus,
            periods,
        }) => {
            let periods: Vec<u64> = if periods.is_empty() {
                Vec::new()
            } else {
                periods
                    .split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|_| usage(format!("bad period `{p}`"))))
                    .collect::<Result<_, _>>()?
            };
            let sig = OrbifoldSignature::new(quotient_genus, periods, None)
                .map_err(|e| usage(e.to_string()))?;
            let g = orbifold::hurwitz_genus(degree, &sig);
            emit(
                cli.json,
                json!({
                    "degree": degree,
                    "signature": sig,
                    "genus": RatValue(g),
                    "integral": g.is_integer(),
                }),
                format!(
                    "g = {g}{}\n",
                    if g.is_integer() { "" } else { "  (not integral: no such cover)" }
                ),
            );
        }
        Command::Orbifold(OrbifoldCommand::Minimize {
            half_term,
            min_h,
            max_h,
            max_periods,
            max_period,
        }) => {
            let limits = SearchLimits {
                min_quotient_genus: min_h,
                max_quotient_genus: max_h,
                max_periods,
                max_period,
            };
            let m = orbifold::minimize_orbifold(half_term, &limits)
                .map_err(|e| semantic(e.to_string()))?;
            emit(
                cli.json,
                json!({
                    "half_term": half_term,
                    "value": RatValue(m.value),
                    "witness": m.witness,
                }),
                format!(
                    "minimum = {}\nwitness = (h = {}; periods {:?}{})\n",
                    m.value,
                    m.witness.quotient_genus,
                    m.witness.periods,
                    m.witness
                        .marked_period
                        .map(|r| format!("; marked r = {r}"))
                        .unwrap_or_default()
                ),
            );
        }
        Command::Orbifold(OrbifoldCommand::Elliptic { order, j }) => {
            let j = match j.as_str() {
                "generic" => JClass::Generic,
                "1728" => JClass::J1728,
                "0" => JClass::J0,
                _ => return Err(usage(format!("bad j class `{j}` (expected generic | 1728 | 0)"))),
            };
            let m = orbifold::elliptic_min_orbit(order, j).map_err(|e| semantic(e.to_string()))?;
            emit(
                cli.json,
                json!({"order": order, "min_orbit": m}),
                format!("smallest orbit = {m}\n"),
            );
        }
        Command::Orbifold(OrbifoldCommand::Eq1 {
            k,
            quotient_genus,
            fixed_points,
        }) => {
            let g = orbifold::eq1_genus(k, quotient_genus, fixed_points);
            emit(
                cli.json,
                json!({"genus": RatValue(g), "integral": g.is_integer()}),
                format!("g = {g}\n"),
            );
        }
        Command::Wiman(args) => {
            if args.genus < 2 {
                return Err(usage("genus must be >= 2"));
            }
            let bound = orbifold::wiman_bound(args.genus, args.odd);
            let mut value = json!({
                "genus": args.genus,
                "odd_stabilizers_only": args.odd,
                "bound": bound,
            });
            let mut text = format!(
                "|H| <= {bound}  ({} cyclic action, genus {})\n",
                if args.odd { "odd-stabilizer" } else { "general" },
                args.genus
            );
            if args.oracle {
                let max_order = args.max_order.unwrap_or(4 * u64::from(args.genus) + 2);
                let (n, witness) = orbifold::cyclic_action_oracle(args.genus, args.odd, max_order);
                assert!(orbifold::validate_cyclic_action(&witness, args.genus, args.odd));
                text.push_str(&format!(
                    "oracle: max realizable order {n}, signature (h = {}; periods {:?}), residues {:?}\n",
                    witness.signature.quotient_genus,
                    witness.signature.periods,
                    witness.generating_elements
                ));
                value["oracle"] = json!({"max_realized_order": n, "witness": witness});
            }
            emit(cli.json, value, text);
        }
        Command::Bound(args) => {
            if args.exceptions {
                let rows = bounds::exceptional_table();
                if cli.json {
                    emit(true, json!({"exceptions": rows}), String::new());
                } else {
                    let mut out = String::from("H    r  |G|   K^2  |G|/(K^2+8)  |G|/K^2\n");
                    for row in &rows {
                        out.push_str(&format!(
                            "{:<4} {}  {:<5} {:<4} {:<12} {}\n",
                            row.h.to_string(),
                            row.r,
                            row.g_order,
                            row.ksq,
                            row.ratio_plus8.to_string(),
                            row.ratio
                        ));
                    }
                    emit(false, json!({}), out);
                }
                return Ok(());
            }
            if let Some(case) = args.stabilizer {
                let case = match case.as_str() {
                    "s3-positive" => StabilizerCase::ThirdIndexPositive,
                    "negligible-not-etale" => StabilizerCase::NegligibleNotEtale,
                    "etale" => StabilizerCase::Etale,
                    "d4-cyclic" => StabilizerCase::D4Cyclic,
                    "z3-one-orbit" => StabilizerCase::Z3OneOrbit,
                    "z2-one-orbit" => StabilizerCase::Z2OneOrbit,
                    _ => return Err(usage(format!("unknown stabilizer case `{case}`"))),
                };
                let ksq_rel = args
                    .ksq_rel
                    .ok_or_else(|| usage("--stabilizer needs --ksq-rel"))?;
                let v = bounds::stabilizer_bound(case, args.r, ksq_rel);
                emit(
                    cli.json,
                    json!({"bound": RatValue(v)}),
                    format!("|Aut(f)| <= {v}\n"),
                );
                return Ok(());
            }
            let (Some(base_genus), Some(ksq), Some(kind)) = (args.base_genus, args.ksq, args.kind)
            else {
                return Err(usage(
                    "bound evaluation needs --base-genus, --ksq and --kind (or --exceptions / --stabilizer)",
                ));
            };
            let kind = parse_kind(&kind).map_err(usage)?;
            let verdicts = bounds::evaluate(base_genus, ksq, kind, args.locally_trivial, args.minimal)
                .map_err(|e| semantic(e.to_string()))?;
            if cli.json {
                emit(true, json!({"verdicts": verdicts}), String::new());
            } else {
                let mut out = String::new();
                for v in &verdicts {
                    out.push_str(&format!(
                        "{:<20} {:>10}  {}{}\n",
                        v.formula,
                        v.value.to_string(),
                        if v.sharp { "sharp  " } else { "       " },
                        v.statement
                    ));
                }
                emit(false, json!({}), out);
            }
        }
        Command::Examples(ExamplesCommand::List) => {
            let ids = catalog::entry_ids();
            if cli.json {
                let entries: Vec<_> = ids
                    .iter()
                    .map(|id| json!({"id": id, "parameters": catalog::parameter_spec(id)}))
                    .collect();
                emit(true, json!({"entries": entries}), String::new());
            } else {
                let mut out = String::new();
                for id in ids {
                    out.push_str(&format!(
                        "{:<18} {}\n",
                        id,
                        catalog::parameter_spec(id).unwrap_or("none")
                    ));
                }
                emit(false, json!({}), out);
            }
        }
        Command::Examples(ExamplesCommand::Verify { id, param }) => {
            let mut params = BTreeMap::new();
            for p in &param {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| usage(format!("bad --param `{p}` (expected name=value)")))?;
                let v: i64 = v
                    .parse()
                    .map_err(|_| usage(format!("bad --param value `{v}`")))?;
                params.insert(k.to_string(), v);
            }
            let jobs: Vec<(String, BTreeMap<String, i64>)> = match id {
                Some(id) => vec![(id, params)],
                None => catalog::default_sweep(),
            };
            let mut reports = Vec::new();
            for (id, params) in jobs {
                let entry = catalog::instantiate(&id, &params).map_err(|e| semantic(e.to_string()))?;
                let report = catalog::verify(&entry).map_err(|e| semantic(e.to_string()))?;
                if !cli.json {
                    let params_txt = if report.parameters.is_empty() {
                        String::new()
                    } else {
                        format!(
                            "({})",
                            report
                                .parameters
                                .iter()
                                .map(|(k, v)| format!("{k}={v}"))
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    };
                    println!(
                        "ok {:<18}{:<8} K^2={:<5} |G|={:<6} |K|={:<3} |H|={:<5}{}",
                        report.id,
                        params_txt,
                        report.ksq_geometric,
                        report.g_order,
                        report.k_order,
                        report.h_order,
                        report
                            .attained
                            .as_deref()
                            .map(|f| format!(" attains {f}"))
                            .unwrap_or_default()
                    );
                }
                reports.push(report);
            }
            if cli.json {
                emit(true, serde_json::to_value(&reports).expect("serializable"), String::new());
            } else {
                println!("verified {} instantiations", reports.len());
            }
        }
        Command::Check { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| usage(format!("cannot read `{file}`: {e}")))?;
            let parsed = scenario::parse(&text).map_err(|e| match e {
                ScenarioError::Syntax { .. } => usage(e.to_string()),
                ScenarioError::Semantic(_) => semantic(e.to_string()),
            })?;
            let report = scenario::analyze(&parsed).map_err(|e| semantic(e.to_string()))?;
            let format = if cli.json {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            };
            let bytes = scenario::emit_report(&report, format);
            print!("{}", String::from_utf8(bytes).expect("utf-8 report"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if json {
                eprintln!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": f.message})).expect("serializable")
                );
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
