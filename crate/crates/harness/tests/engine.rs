use std::time::Duration;

use snabs_core::dsl::{parse_ideal, parse_mult, parse_ring};
use snabs_core::Error;
use snabs_harness::cli;
use snabs_harness::corpus::Corpus;
use snabs_harness::engine::{check, over, skip, Instance, Memo, Tally};
use snabs_harness::props::{resolve, run, Settings, PROPS};

/// Splits a replay line on spaces, keeping single-quoted arguments whole.
fn shell_split(line: &str) -> Vec<String> {
    let mut args = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for c in line.chars() {
        match c {
            '\'' => quoted = !quoted,
            ' ' if !quoted => {
                if !current.is_empty() {
                    args.push(std::mem::take(&mut current));
                }
            }
            _ => current.push(c),
        }
    }
    if !current.is_empty() {
        args.push(current);
    }
    args
}

#[test]
fn replay_reproduces_the_failing_verdict() {
    let ring = parse_ring("Z/24").unwrap();
    let i = parse_ideal("ideal()", &ring).unwrap();
    let s = parse_mult("mult(1)", &ring).unwrap();
    let mut memo = Memo::default();
    assert!(!memo.s_abs(&i, &s, 2).unwrap());
    let instance = Instance::classify(&i, &s, 2, "");
    let out = cli::run(shell_split(&instance.replay));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("S-2-absorbing: false, counterexample"), "{}", out.stdout);
}

#[test]
fn tally_accounting() {
    let mut t = Tally::default();
    let describe = || Instance { key: "k".into(), replay: "r".into() };
    t.instance(None, describe, || check("a", true, ""));
    t.instance(None, describe, || check("b", false, "broken"));
    t.instance(None, describe, || skip("hypothesis fails"));
    t.instance(None, describe, || Err(Error::Precondition("nope".into())));
    t.instance(None, describe, || Err(Error::Internal("bad".into())));
    t.instance(Some(Duration::ZERO), describe, || {
        std::thread::sleep(Duration::from_millis(2));
        let ring = parse_ring("Z/12").unwrap();
        let i = parse_ideal("ideal()", &ring).unwrap();
        Memo::default().s_abs(&i, &parse_mult("mult(1)", &ring).unwrap(), 3)?;
        check("c", true, "")
    });
    assert_eq!((t.run, t.passed, t.failed, t.skipped), (6, 1, 2, 3));
    assert_eq!(t.skip_reasons["time cap exceeded"], 1);
    assert_eq!(t.skip_reasons["precondition: nope"], 1);
    assert_eq!(t.failures[0].clause, "b");
    assert_eq!(t.failures[1].clause, "error");
}

#[test]
fn over_merges_in_unit_order() {
    let units: Vec<u64> = (0..200).collect();
    let t = over(&units, |u, t| t.note(u.to_string()));
    let expected: Vec<String> = units.iter().map(u64::to_string).collect();
    assert_eq!(t.notes, expected);
}

#[test]
fn registry_ids_and_groups() {
    assert_eq!(PROPS.len(), 39);
    let mut ids: Vec<&str> = PROPS.iter().map(|p| p.id).collect();
    ids.dedup();
    assert_eq!(ids.len(), 39);
    assert_eq!(resolve(&["2.3".into()]).unwrap().len(), 5);
    assert_eq!(resolve(&["colon-characterization".into()]).unwrap()[0].id, "2.9");
    assert_eq!(resolve(&[]).unwrap().len(), 39);
    assert!(resolve(&["3.2".into()]).is_err());
}

#[test]
fn small_corpus_passes_and_counts_add_up() {
    let corpus = Corpus::named("small", 0).unwrap();
    assert!(corpus.excluded.is_empty(), "{:?}", corpus.excluded);
    for p in PROPS {
        let r = run(p, &corpus, &Settings::default(), false);
        assert_eq!(r.run, r.passed + r.failed + r.skipped, "{}", p.id);
        assert_eq!(r.skipped, r.skip_reasons.values().sum::<u64>(), "{}", p.id);
        assert_eq!(r.failed, 0, "{}: {:?}", p.id, r.failures);
    }
}
