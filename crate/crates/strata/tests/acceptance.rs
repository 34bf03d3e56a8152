//! Acceptance suite: one test per headline capability, each printing a
//! single pass line. Everything is exact arithmetic; the randomized
//! families run on pinned seeds through the same suites the CLI `check`
//! command exposes.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use common::adjunction_p1;
use std::path::PathBuf;

use strata::check::run_suite;
use strata::cli::exec::{execute, Command, ExecOptions};
use strata::cli::model::load_model;
use strata::scalar::rat;
use strata::Partition;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(name)
}

fn assert_suite(criterion: &str, suite: &str, seed: u64, cases: u32) {
    let checks = run_suite(suite, seed, cases).expect("suite exists");
    for c in &checks {
        assert!(c.pass, "{criterion}: {} failed ({})", c.name, c.detail);
    }
    println!("PASS {criterion} [{suite}, seed={seed}, cases={cases}]");
}

/// Triple points of Boy's surface: the r=3 class of the RP^2 fixture is
/// the nonzero point class over F2.
#[test]
fn criterion_01_boys_surface_triple_points() {
    let model = load_model(&fixture("boy.json")).unwrap();
    let report = execute(
        &model,
        &Command::Multipoint { immersion: "boy".into(), r: 3 },
        &ExecOptions::default(),
    )
    .unwrap();
    let numbers = &report.result["class"]["numbers"];
    assert_eq!(numbers["[]"], "1", "odd triple-point count of Boy's surface");
    assert_eq!(report.result["class"]["dim"], 0);
    println!("PASS criterion 1: Boy's surface triple points = {{[] -> 1}}");
}

/// The quartic K3 via the Euler locus of the realified O(4) over CP^3,
/// against the independent adjunction oracle.
#[test]
fn criterion_02_k3_euler_locus() {
    let model = load_model(&fixture("k3.json")).unwrap();
    let report = execute(
        &model,
        &Command::EulerLocus { space: "cp3".into(), bundle: "o4r".into() },
        &ExecOptions::default(),
    )
    .unwrap();
    let numbers = &report.result["class"]["numbers"];
    assert_eq!(numbers["[1]"], "-48");
    assert_eq!(adjunction_p1(3, 4), -48, "adjunction oracle agrees");
    println!("PASS criterion 2: K3 Euler locus = {{[1] -> -48}} (adjunction oracle -48)");
}

/// The corank-2 count of a generic CP^2 -> R^4 map pairs to -3.
#[test]
fn criterion_03_sigma2_count_of_cp2() {
    let model = load_model(&fixture("cp2.json")).unwrap();
    let report = execute(
        &model,
        &Command::ThomSigma2 { map: "g".into() },
        &ExecOptions::default(),
    )
    .unwrap();
    assert_eq!(report.result["paired"], "-3");
    println!("PASS criterion 3: corank-2 count of CP^2 -> R^4 = -3");
}

/// Closed form vs recursion: 200 seeded random Euclidean immersion data
/// (top degree <= 16), r = 2..4, exact coefficientwise agreement.
#[test]
fn criterion_04_closed_form_equals_recursion() {
    assert_suite("criterion 4: closed form = recursion", "herbert-recursion", 2604, 200);
}

/// r-fold product theorem: 200 seeded random even-codimension pairs over
/// both fields, r = 2..4, exact agreement with the signed Kunneth product.
#[test]
fn criterion_05_rfold_product_theorem() {
    assert_suite("criterion 5: r-fold product theorem", "multi-product", 2605, 200);
}

/// Double-point product theorem: 100 seeded random pairs with synthetic
/// Gysin data; the three-term formula equals the recursion-derived side.
#[test]
fn criterion_06_double_point_product_theorem() {
    assert_suite("criterion 6: double-point product theorem", "double-product", 2606, 100);
}

/// Beta multiplicativity and inversion: 500 random total classes in total,
/// exact equality on the general product path.
#[test]
fn criterion_07_beta_multiplicativity_and_inversion() {
    // beta-mult draws two classes per case; 250 cases = 500 classes.
    assert_suite("criterion 7a: beta multiplicativity", "beta-mult", 2607, 250);
    assert_suite("criterion 7b: beta inversion", "beta-inverse", 2607, 500);
}

/// Cartan product theorems for the first two strata: 200 random map-data
/// pairs each; suspension term sums equal the direct expansions.
#[test]
fn criterion_08_cartan_product_theorems() {
    assert_suite("criterion 8a: corank-1 product expansion", "sigma1-product", 2608, 200);
    assert_suite("criterion 8b: corank-2 product expansion", "sigma2-product", 2608, 200);
}

/// Morin rank values: the codimension-1 sweep, the (8,3) value, the
/// dimension-0 column, and both independent counting oracles.
#[test]
fn criterion_09_morin_ranks() {
    use strata::morin::morin_rank;
    for n in 0..=40 {
        assert_eq!(morin_rank(n, 1), u64::from(n % 4 == 0), "rank({n},1)");
    }
    assert_eq!(morin_rank(8, 3), 2);
    for k in 1..=9 {
        assert_eq!(morin_rank(0, k), 1, "rank(0,{k})");
    }
    assert_suite("criterion 9: Morin ranks", "morin-rank", 0, 1);
}

/// Ring axioms of the Morin product on 100 random class triples:
/// commutativity, associativity, bigraded additivity, distributivity, the
/// annihilation rule, and part-bound closure.
#[test]
fn criterion_10_morin_ring_axioms() {
    assert_suite("criterion 10: Morin ring axioms", "morin-ring", 2610, 100);
}

/// The fixture values reachable through the CLI match the library results
/// bit for bit (same rendering, same numbers).
#[test]
fn fixtures_execute_end_to_end() {
    for name in ["cp2.json", "boy.json", "k3.json", "products.json", "sigma.json", "herbert.json"] {
        let model = load_model(&fixture(name)).unwrap();
        for command in model.commands.clone() {
            let report = execute(&model, &command, &ExecOptions::default())
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            for check in &report.checks {
                assert!(check.pass, "{name}: embedded check {} failed", check.name);
            }
        }
    }
    println!("PASS fixtures: all bundled models execute with green embedded checks");
}

/// The headline values of the product fixtures, end to end.
#[test]
fn product_fixture_values() {
    let model = load_model(&fixture("products.json")).unwrap();
    let opts = ExecOptions::default();

    let double = execute(
        &model,
        &Command::ProductMulti { immersions: ["ga".into(), "gb".into()], r: 2 },
        &opts,
    )
    .unwrap();
    assert_eq!(double.result["class"]["numbers"]["[]"], "-4");

    let rank = execute(&model, &Command::MorinRank { n: 8, k: 3 }, &opts).unwrap();
    assert_eq!(rank.result["rank"], 2);

    let square = execute(
        &model,
        &Command::MorinMul { a: "m1".into(), b: "m1".into() },
        &opts,
    )
    .unwrap();
    assert_eq!(square.result["class"]["strata"]["0"]["numbers"]["[1,1]"], "18");
    assert_eq!(square.result["class"]["strata"]["0"]["numbers"]["[2]"], "9");
    assert_eq!(square.result["class"]["strata"]["2"]["numbers"]["[]"], "1");

    // Exactness sanity: rationals never degrade to floats anywhere in the
    // pipeline, so a third-scaled class multiplies exactly.
    let third = execute(
        &model,
        &Command::ClassProduct {
            a: strata::cli::model::RawClass {
                dim: 4,
                numbers: [("[1]".to_string(), "1/3".to_string())].into(),
            },
            b: strata::cli::model::RawClass {
                dim: 4,
                numbers: [("[1]".to_string(), "1/3".to_string())].into(),
            },
            field: None,
        },
        &opts,
    )
    .unwrap();
    assert_eq!(third.result["class"]["numbers"]["[1,1]"], "2/9");
    assert_eq!(third.result["class"]["numbers"]["[2]"], "1/9");
    println!("PASS product fixture values (including exact rational arithmetic)");
}

/// Coefficientwise exactness of a classical value often lost to rounding:
/// the signature-style combination for CP^2 x CP^2 via Morin strata
/// arithmetic stays an exact integer vector.
#[test]
fn exactness_of_repeated_products() {
    use std::collections::BTreeMap;
    use strata::morin::{class_product, morin_rank};
    use strata::multipoint::CobordismClass;

    let cp2 = CobordismClass::new(
        4,
        BTreeMap::from([(Partition::new(vec![1]), rat(3, 1))]),
    )
    .unwrap();
    let mut power = CobordismClass::new(
        0,
        BTreeMap::from([(Partition::empty(), rat(1, 1))]),
    )
    .unwrap();
    for _ in 0..4 {
        power = class_product(&power, &cp2);
    }
    // p-numbers of (CP^2)^4: multinomial expansion of (p_1)^4 = 3^4 * 4!/(...)
    assert_eq!(power.get(&Partition::new(vec![1, 1, 1, 1])), rat(1944, 1));
    assert_eq!(power.get(&Partition::new(vec![2, 1, 1])), rat(972, 1));
    assert_eq!(power.get(&Partition::new(vec![2, 2])), rat(486, 1));
    assert_eq!(power.get(&Partition::new(vec![3, 1])), rat(324, 1));
    assert_eq!(power.get(&Partition::new(vec![4])), rat(81, 1));
    // The length-16 column of the rank table is consistent with the
    // splitting formula: strata indices 0, 2, 4 each contribute one
    // bounded partition.
    assert_eq!(morin_rank(16, 3), 3);
    println!("PASS exact repeated products of [CP^2]");
}
