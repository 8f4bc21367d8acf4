//! End-to-end acceptance suite. Every check here is exact (integers and
//! reduced fractions); each test prints one PASS line with its timing.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use genus2::bounds;
use genus2::catalog;
use genus2::germs;
use genus2::invariants::{self, SingularityBudget};
use genus2::orbifold::{self, OrbifoldSignature, SearchLimits};
use genus2::rat::{rat, rint};
use genus2::scenario::{self, ScenarioError};

fn finish(name: &str, start: Instant, budget: Duration, detail: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{name} took {elapsed:?}, budget {budget:?}"
    );
    println!("PASS {name}: {detail} ({elapsed:?})");
}

#[test]
fn catalog_sweep() {
    let start = Instant::now();
    let reports = catalog::verify_sweep().expect("every sweep entry verifies");

    let by_id = |id: &str| -> Vec<&catalog::VerificationReport> {
        reports.iter().filter(|r| r.id == id).collect()
    };
    let m_of = |r: &catalog::VerificationReport| r.parameters["m"] as u64;

    // two-path K^2 agreement everywhere
    for r in &reports {
        assert_eq!(r.ksq_geometric, r.ksq_from_budget, "{}", r.id);
    }

    // bit-exact anchors
    let flagship = &by_id("5.4")[0];
    assert_eq!(flagship.ksq_geometric, 16);
    assert_eq!(flagship.g_order, 2880);
    for r in by_id("5.7") {
        assert_eq!(r.g_order, 100 * m_of(r));
    }
    for r in by_id("5.8+") {
        assert_eq!(r.g_order, 100 * m_of(r) - 10);
    }
    for r in by_id("5.9") {
        assert_eq!(r.g_order, 30 * m_of(r));
    }
    for r in by_id("5.8") {
        assert_eq!(r.g_order, 10 * m_of(r));
    }

    // sharpness: wherever the attained formula is among the applicable
    // verdicts, |G| equals it exactly (verify() enforces this; double-check
    // the flagship numerically)
    assert!(flagship
        .verdicts
        .iter()
        .any(|v| v.formula == "full-120K2+960" && v.value.0 == rint(2880) && v.sharp));

    finish(
        "catalog sweep",
        start,
        Duration::from_secs(1),
        &format!("{} instantiations verified both ways", reports.len()),
    );
}

#[test]
fn exceptional_registry() {
    let start = Instant::now();
    let rows = bounds::exceptional_table();
    assert_eq!(rows.len(), 4);
    let expected = [
        ("I60", 5, 2880, 16, 120, 180),
        ("I60", 3, 2880, 32, 72, 90),
        ("O24", 4, 1152, 4, 96, 288),
        ("O24", 3, 1152, 8, 72, 144),
    ];
    for (row, (h, r, g, ksq, plus8, plain)) in rows.iter().zip(expected) {
        assert_eq!(row.h.to_string(), h);
        assert_eq!(row.r, r);
        assert_eq!(row.g_order, g);
        assert_eq!(row.ksq, ksq);
        // ratios recomputed from the row data
        assert_eq!(rat(row.g_order as i64, row.ksq + 8), rint(plus8));
        assert_eq!(rat(row.g_order as i64, row.ksq), rint(plain));
        assert_eq!(row.ratio_plus8, rint(plus8));
        assert_eq!(row.ratio, rint(plain));
        // each row violates 48(K^2+8) and satisfies the two global bounds
        let g = row.g_order as i64;
        assert!(g > 48 * (row.ksq + 8));
        assert!(g <= 120 * (row.ksq + 8));
        assert!(g <= 288 * row.ksq);
    }
    finish(
        "exceptional registry",
        start,
        Duration::from_millis(100),
        "4 rows, ratios recomputed exactly",
    );
}

#[test]
fn orbifold_optimizer() {
    let start = Instant::now();
    let limits = SearchLimits::default();

    let plain = orbifold::minimize_orbifold(false, &limits).unwrap();
    assert_eq!(plain.value, rat(1, 42));
    assert_eq!(plain.witness.quotient_genus, 0);
    assert_eq!(plain.witness.periods, vec![2, 3, 7]);

    let half = orbifold::minimize_orbifold(true, &limits).unwrap();
    assert_eq!(half.value, rat(2, 21));
    assert_eq!(half.witness.quotient_genus, 0);
    assert_eq!(half.witness.periods, vec![2, 3, 7]);
    assert_eq!(half.witness.marked_period, Some(7));

    finish(
        "orbifold optimizer",
        start,
        Duration::from_secs(5),
        "minima 1/42 and 2/21 at (0; 2,3,7), exhaustive over the default box",
    );
}

#[test]
fn germ_ratio_table() {
    let start = Instant::now();
    let table = germs::ratio_table();
    let expected = [
        ("D6", 12, 3, rint(4)),
        ("Z6", 12, 5, rat(12, 5)),
        ("Z5", 10, 4, rat(5, 2)),
        ("D4", 8, 2, rint(4)),
        ("Z4", 8, 5, rat(8, 5)),
        ("Z3", 6, 2, rint(3)),
        ("Z2", 4, 1, rint(4)),
        ("1", 2, 1, rint(2)),
    ];
    assert_eq!(table.len(), expected.len());
    for (row, (sym, lifted, s2, ratio)) in table.iter().zip(expected.iter()) {
        assert_eq!(&row.group.to_string(), sym);
        assert_eq!(row.lift_order, *lifted);
        assert_eq!(row.s2_min, *s2);
        assert_eq!(row.max_ratio, *ratio);
    }
    assert_eq!(table.iter().map(|r| r.max_ratio).max().unwrap(), rint(4));
    let restricted: Vec<&str> = vec!["Z6", "Z5", "Z4", "1"];
    assert_eq!(
        table
            .iter()
            .filter(|r| restricted.contains(&r.group.to_string().as_str()))
            .map(|r| r.max_ratio)
            .max()
            .unwrap(),
        rat(5, 2)
    );
    finish(
        "germ ratio table",
        start,
        Duration::from_millis(100),
        "8 rows exact, max ratio 4 (5/2 on Z6/Z5/Z4/1)",
    );
}

#[test]
fn budget_identities() {
    let start = Instant::now();
    let mut runner = TestRunner::new(Config {
        cases: 10_000,
        ..Config::default()
    });
    runner
        .run(&(0u64..100_000, 0u64..50_000), |(s2_seed, s3)| {
            // the four displayed identities on valid budgets
            let s2 = s2_seed + (10 - (s2_seed + 2 * s3) % 10) % 10;
            let b = SingularityBudget::new(s2, s3);
            let r = invariants::relative_invariants(&b).unwrap();
            prop_assert_eq!(5 * r.ksq_rel, s2 + 7 * s3);
            prop_assert_eq!(10 * r.chi_f, s2 + 2 * s3);
            prop_assert_eq!(r.ksq_rel + s3, 2 * r.n);
            prop_assert_eq!(r.chi_f + s3, r.n);
            // acceptance iff the congruence
            let raw = SingularityBudget::new(s2_seed, s3);
            prop_assert_eq!(
                invariants::validate_budget(&raw),
                (s2_seed + 2 * s3) % 10 == 0
            );
            prop_assert_eq!(
                invariants::relative_invariants(&raw).is_ok(),
                invariants::validate_budget(&raw)
            );
            Ok(())
        })
        .unwrap();
    finish(
        "budget identities",
        start,
        Duration::from_secs(1),
        "10^4 random budgets, four identities exact",
    );
}

#[test]
fn cyclic_oracle() {
    let start = Instant::now();
    for genus in 2..=8u32 {
        let (general, witness) = orbifold::cyclic_action_oracle(genus, false, 50);
        assert_eq!(general, 4 * u64::from(genus) + 2, "genus {genus}");
        assert!(orbifold::validate_cyclic_action(&witness, genus, false));

        let (odd, odd_witness) = orbifold::cyclic_action_oracle(genus, true, 50);
        assert!(odd <= 3 * u64::from(genus) + 3, "genus {genus}");
        assert!(orbifold::validate_cyclic_action(&odd_witness, genus, true));

        if genus == 4 {
            assert_eq!(odd, 15);
            assert_eq!(odd_witness.signature.quotient_genus, 0);
            assert_eq!(odd_witness.signature.periods, vec![3, 5, 15]);
        }
    }
    finish(
        "cyclic oracle",
        start,
        Duration::from_secs(30),
        "genus 2..8: general max 4g+2, odd max <= 3g+3 with equality at genus 4",
    );
}

#[test]
fn hurwitz_check() {
    let start = Instant::now();
    let sig = OrbifoldSignature::new(0, vec![2, 3, 7], None).unwrap();
    for g in 2..=10i64 {
        assert_eq!(
            orbifold::hurwitz_genus(84 * (g as u64 - 1), &sig),
            rint(g)
        );
    }
    // Exhaustiveness for genus 2: a degree-n cover of a hyperbolic signature
    // has n * sum = 2, so n = 2 / sum <= 2 / (1/42) = 84. The box minimum
    // 1/42 certifies that no n > 84 works for any signature in the box.
    let min = orbifold::minimize_orbifold(false, &SearchLimits::default()).unwrap();
    assert_eq!(min.value, rat(1, 42));
    for n in 85..=10_000i64 {
        assert!(rat(2, n) < min.value);
    }
    finish(
        "hurwitz check",
        start,
        Duration::from_secs(10),
        "84(g-1) covers for g = 2..10; no larger degree admits a hyperbolic signature",
    );
}

#[test]
fn parser_golden_files() {
    let start = Instant::now();
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");

    // valid files parse and round-trip byte-identically through the
    // canonical serializer
    let valid = [
        "ex54.fib",
        "locally_trivial_product.fib",
        "elliptic_cyclic.fib",
        "germ_mix.fib",
        "abelian_fraction.fib",
        "hirzebruch_cover.fib",
    ];
    for name in valid {
        let path = fixtures.join("valid").join(name);
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = scenario::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(scenario::to_fib(&parsed), text, "{name} not canonical");
        let reparsed = scenario::parse(&scenario::to_fib(&parsed)).unwrap();
        assert_eq!(parsed, reparsed, "{name} round trip");
    }

    // invalid files produce the specified error class
    enum Expect {
        Syntax,
        Semantic,
        Analyze,
    }
    let invalid = [
        ("empty.fib", Expect::Syntax),
        ("unknown_key.fib", Expect::Syntax),
        ("duplicate_key.fib", Expect::Syntax),
        ("bad_germ_group.fib", Expect::Syntax),
        ("unclassified_germ.fib", Expect::Semantic),
        ("bad_budget.fib", Expect::Analyze),
    ];
    for (name, expect) in invalid {
        let text = std::fs::read_to_string(fixtures.join("invalid").join(name)).unwrap();
        match expect {
            Expect::Syntax => {
                assert!(
                    matches!(scenario::parse(&text), Err(ScenarioError::Syntax { .. })),
                    "{name}"
                );
            }
            Expect::Semantic => {
                assert!(
                    matches!(scenario::parse(&text), Err(ScenarioError::Semantic(_))),
                    "{name}"
                );
            }
            Expect::Analyze => {
                let parsed = scenario::parse(&text).unwrap();
                assert!(scenario::analyze(&parsed).is_err(), "{name}");
            }
        }
    }

    // the flagship scenario analyzes to K^2 = 16 with the 2880 verdict
    let text = std::fs::read_to_string(fixtures.join("valid/ex54.fib")).unwrap();
    let report = scenario::analyze(&scenario::parse(&text).unwrap()).unwrap();
    assert_eq!(report.invariants.ksq, 16);
    assert!(report
        .verdicts
        .iter()
        .any(|v| v.formula == "full-120K2+960" && v.value.0 == rint(2880)));

    // a locally trivial budget over a genus-3 base keeps only the 504 line
    let text =
        std::fs::read_to_string(fixtures.join("valid/locally_trivial_product.fib")).unwrap();
    let report = scenario::analyze(&scenario::parse(&text).unwrap()).unwrap();
    assert_eq!(report.invariants.ksq, 16);
    assert_eq!(report.verdicts.len(), 1);
    assert!(report
        .verdicts
        .iter()
        .any(|v| v.formula == "full-504K2" && v.value.0 == rint(8064)));

    finish(
        "parser golden files",
        start,
        Duration::from_secs(1),
        "6 valid byte-identical round trips, 6 invalid with the right error class",
    );
}

#[test]
fn cross_module_consistency() {
    let start = Instant::now();

    // every catalog group order factors as |K| |H| under its kind cap
    for (id, params) in catalog::default_sweep() {
        let entry = catalog::instantiate(&id, &params).unwrap();
        let c = bounds::FactorizationConstraint {
            k_order: entry.expected.k_order,
            h_order: entry.expected.h_order,
        };
        assert_eq!(c.group_order(), entry.expected.g_order, "{id}");
        assert!(entry.expected.k_order <= bounds::k_order_cap(entry.group_kind));
    }

    // the scenario pipeline reproduces the flagship catalog numbers
    let mut params = BTreeMap::new();
    params.insert("g".to_string(), 2i64);
    let entry = catalog::instantiate("5.2", &params).unwrap();
    let report = catalog::verify(&entry).unwrap();
    assert_eq!(report.budget, SingularityBudget::new(120, 0));
    assert_eq!(report.ksq_geometric, 32);

    finish(
        "cross-module consistency",
        start,
        Duration::from_secs(1),
        "factorizations, caps, and catalog/scenario agreement",
    );
}
