//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always print; exits nonzero if any criterion fails.

#[path = "../../core/tests/support/fuzz.rs"]
mod fuzz_support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde_json::Value;
use snabs_core::amalgam::{amalgamate, local_ring_lemma_check, verify_transfer};
use snabs_core::classify::{is_n_absorbing, is_s_n_absorbing, minimal_s_n_absorbing_over, omega, omega_table, replay_counterexample};
use snabs_core::dsl::{
    parse_element, parse_hom, parse_ideal, parse_mult, parse_ring, render_element, render_hom, render_ideal, render_multset, render_ring,
};
use snabs_core::{FiniteRing, Ideal, IdealLattice, MultSet, RingHom};
use snabs_harness::cli;
use snabs_harness::corpus::Corpus;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn prop<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["props"].as_array().unwrap().iter().find(|p| p["id"] == id).unwrap_or_else(|| panic!("no prop {id}"))
}

fn count(p: &Value, field: &str) -> u64 {
    p[field].as_u64().unwrap()
}

fn law_suite(report: &Value, wall: Duration) -> Outcome {
    let props = report["props"].as_array().unwrap();
    let failing: Vec<&str> = props.iter().filter(|p| count(p, "failed") > 0).map(|p| p["id"].as_str().unwrap()).collect();
    let vacuous: Vec<&str> = props.iter().filter(|p| count(p, "passed") == 0).map(|p| p["id"].as_str().unwrap()).collect();
    let passed = failing.is_empty() && vacuous.is_empty() && wall <= Duration::from_secs(600);
    outcome(
        passed,
        format!(
            "{} ids, {} checks executed, failing {:?}, vacuous {:?}, {:.1} s",
            props.len(),
            count(&report["totals"], "passed") + count(&report["totals"], "failed"),
            failing,
            vacuous,
            wall.as_secs_f64()
        ),
    )
}

fn quantifier_order(report: &Value) -> Outcome {
    let notes: Vec<&str> = prop(report, "2.9")["notes"].as_array().map(|n| n.iter().filter_map(Value::as_str).collect()).unwrap_or_default();
    match notes.iter().find(|n| n.starts_with("quantifier order:")) {
        Some(n) => outcome(true, *n),
        None => outcome(false, "no quantifier-order note in the 2.9 report"),
    }
}

fn omega_constants() -> Outcome {
    let z12 = parse_ring("Z/12").unwrap();
    let zero = Ideal::zero(&z12);
    let w1 = omega(&zero, &MultSet::trivial(&z12)).unwrap().value;
    let w2 = omega(&zero, &parse_mult("mult(4)", &z12).unwrap()).unwrap().value;
    let table = omega_table(&IdealLattice::new(&z12).unwrap(), &MultSet::units(&z12)).unwrap().values;
    let cubic = parse_ring("Z/2[x]/(x^3)").unwrap();
    let w3 = omega(&Ideal::zero(&cubic), &MultSet::trivial(&cubic)).unwrap().value;
    let product = parse_ring("product(Z/12, Z/5)").unwrap();
    let w4 = omega(&Ideal::zero(&product), &MultSet::trivial(&product)).unwrap().value;
    let z5 = parse_ring("Z/5").unwrap();
    let w5 = omega(&Ideal::zero(&z5), &MultSet::trivial(&z5)).unwrap().value;
    let passed = w1 == 3 && w2 == 1 && table == BTreeSet::from([1, 2, 3]) && w3 == 3 && w4 == 4 && w4 == w1 + w5;
    outcome(passed, format!("{w1}, {w2}, {table:?}, {w3}, {w4} = {w1} + {w5}"))
}

fn colon_equivalence(report: &Value) -> Outcome {
    let p = prop(report, "2.9");
    let disagreements = count(p, "failed");
    outcome(disagreements == 0 && count(p, "passed") > 0, format!("{} instances, {disagreements} disagreements", count(p, "passed")))
}

fn localization_equivalence(report: &Value) -> Outcome {
    let (p, v) = (prop(report, "3.4"), prop(report, "v31"));
    let passed = count(p, "failed") == 0 && count(v, "failed") == 0 && count(p, "passed") > 0 && count(v, "passed") > 0;
    outcome(
        passed,
        format!(
            "equivalence on {} instances, saturation colon on {}, failures {} and {}",
            count(p, "passed"),
            count(v, "passed"),
            count(p, "failed"),
            count(v, "failed")
        ),
    )
}

fn analogue_example() -> Outcome {
    let ring = parse_ring("Z/6[x]/(x^3)").unwrap();
    let i = parse_ideal("ideal(2*x^2)", &ring).unwrap();
    let s = parse_mult("mult(4)", &ring).unwrap();
    let trivial = MultSet::trivial(&ring);
    let s2 = is_s_n_absorbing(&i, &s, 2).unwrap();
    let plain = is_n_absorbing(&i, 2).unwrap();
    let prime = is_s_n_absorbing(&i, &s, 1).unwrap();
    let witness_ok = s2.witness_s.is_some_and(|w| snabs_core::classify::check_witness(&i, w, 2).unwrap().holds);
    let plain_replays = plain.counterexample.as_ref().is_some_and(|c| replay_counterexample(&i, &trivial, c));
    let prime_replays = prime.counterexample.as_ref().is_some_and(|c| replay_counterexample(&i, &s, c));
    let passed = s2.holds && witness_ok && !plain.holds && plain_replays && !prime.holds && prime_replays;
    let show = |c: &Option<Vec<usize>>| c.as_ref().map(|c| c.iter().map(|&x| render_element(&ring, x)).collect::<Vec<_>>().join(", ")).unwrap_or_default();
    outcome(
        passed,
        format!(
            "S-2-absorbing {} (s = {}), 2-absorbing {} ({}), S-prime {} ({})",
            s2.holds,
            s2.witness_s.map(|w| render_element(&ring, w)).unwrap_or_default(),
            plain.holds,
            show(&plain.counterexample),
            prime.holds,
            show(&prime.counterexample)
        ),
    )
}

fn minimal_search() -> Outcome {
    let z12 = parse_ring("Z/12").unwrap();
    let lattice = IdealLattice::new(&z12).unwrap();
    let zero = Ideal::zero(&z12);
    let set = MultSet::trivial(&z12);
    let names = |n| {
        let found = minimal_s_n_absorbing_over(&lattice, &zero, &set, n).unwrap();
        found.iter().map(render_ideal).collect::<BTreeSet<_>>()
    };
    let (two, one) = (names(2), names(1));
    let want2 = BTreeSet::from(["ideal(4)".to_string(), "ideal(6)".to_string()]);
    let want1 = BTreeSet::from(["ideal(2)".to_string(), "ideal(3)".to_string()]);
    outcome(two == want2 && one == want1, format!("n = 2: {two:?}, n = 1: {one:?}"))
}

fn amalgam_constants(report: &Value) -> Outcome {
    let z4 = parse_ring("Z/4").unwrap();
    let j = parse_ideal("ideal(2)", &z4).unwrap();
    let amal = amalgamate(&RingHom::identity(&z4), &j).unwrap();
    let lattice = IdealLattice::new(&z4).unwrap();
    let fj_lattice = IdealLattice::new(&amal.fj).unwrap();
    let zero_k = Ideal::zero(&amal.fj);
    let mut transfer = 0;
    let mut transfer_ok = true;
    for set in [MultSet::trivial(&z4), MultSet::units(&z4)] {
        for i in lattice.proper() {
            for n in 1..=3 {
                for c in verify_transfer(&amal, i, &zero_k, &set, n, n).unwrap().into_iter().filter(|c| c.clause == "1") {
                    transfer += 1;
                    transfer_ok &= c.passed;
                }
            }
        }
    }
    let mut lemma = 0;
    let mut lemma_ok = true;
    for i in lattice.proper() {
        for h in fj_lattice.ideals() {
            if let Ok(list) = local_ring_lemma_check(&amal, i, h) {
                for c in list.iter().filter(|c| c.clause == "radical") {
                    lemma += 1;
                    lemma_ok &= c.passed;
                }
            }
        }
    }
    let p = prop(report, "5.9");
    let passed =
        amal.ring.order() == 8 && transfer > 0 && transfer_ok && lemma > 0 && lemma_ok && count(p, "passed") > 0 && count(p, "failed") == 0;
    outcome(
        passed,
        format!(
            "order {}, transfer {transfer} checks, radical identity {lemma} checks, 5.9 {} executed {} failed",
            amal.ring.order(),
            count(p, "passed"),
            count(p, "failed")
        ),
    )
}

fn round_trip() -> Outcome {
    let corpus = Corpus::named("default", 0).unwrap();
    let mut objects = 0usize;
    let mut broken = Vec::new();
    let mut note = |ok: bool, what: String| {
        objects += 1;
        if !ok && broken.len() < 5 {
            broken.push(what);
        }
    };
    for u in &corpus.rings {
        let ring: &std::sync::Arc<FiniteRing> = &u.ring;
        let text = render_ring(ring);
        note(parse_ring(&text).is_ok_and(|r| *r == **ring), text.clone());
        for x in 0..ring.order() {
            let e = render_element(ring, x);
            note(parse_element(&e, ring).is_ok_and(|y| y == x), format!("{text}: {e}"));
        }
        for i in u.lattice.ideals() {
            let t = render_ideal(i);
            note(parse_ideal(&t, ring).is_ok_and(|j| j == *i), format!("{text}: {t}"));
        }
        for s in &u.sets {
            let t = render_multset(s);
            note(parse_mult(&t, ring).is_ok_and(|m| m == *s), format!("{text}: {t}"));
        }
    }
    for h in &corpus.homs {
        let t = render_hom(&h.map);
        note(parse_hom(&t, h.map.source()).is_ok_and(|g| g == h.map), format!("{}: {t}", h.text));
    }
    let stats = fuzz_support::fuzz(10_000, 0x5eed);
    let passed = broken.is_empty() && stats.clean();
    outcome(
        passed,
        format!(
            "{objects} objects, {} broken {broken:?}; fuzz {} mutations, {} accepted, {} panics, {} accepted-invalid, {} rejected-valid, {} unpositioned",
            broken.len(),
            stats.rounds,
            stats.accepted,
            stats.panics.len(),
            stats.accepted_invalid.len(),
            stats.rejected_valid.len(),
            stats.unpositioned.len()
        ),
    )
}

fn main() {
    let args = ["snabs", "verify", "--corpus", "default", "--format", "json"];
    let start = Instant::now();
    let first = cli::run(args);
    let wall = start.elapsed();
    assert!(first.code <= 1, "verify errored: {}", first.stderr);
    let report: Value = serde_json::from_str(&first.stdout).unwrap();
    let second = cli::run(args);

    let results = [
        ("law suite", law_suite(&report, wall)),
        ("quantifier order", quantifier_order(&report)),
        ("omega constants", omega_constants()),
        ("colon characterization", colon_equivalence(&report)),
        ("localization equivalence", localization_equivalence(&report)),
        ("finite analogue example", analogue_example()),
        ("minimal absorbing search", minimal_search()),
        ("amalgamation constants", amalgam_constants(&report)),
        ("text round trip and fuzz", round_trip()),
        (
            "determinism",
            outcome(first.stdout == second.stdout, format!("{} bytes, identical: {}", first.stdout.len(), first.stdout == second.stdout)),
        ),
    ];
    for (k, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} {:<26} {}  {}", k + 1, name, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, (_, o))| !o.passed).map(|(k, _)| k + 1).collect();
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
