//! Differential fuzzing of the text parser against a PEG reference grammar.

#[path = "support/fuzz.rs"]
mod fuzz_support;

use fuzz_support::{fuzz, reference_accepts, SEEDS};
use snabs_core::dsl::{self, Sort};

#[test]
fn seeds_are_accepted_by_both() {
    for &(sort, text) in SEEDS {
        assert!(reference_accepts(text, sort), "reference rejects {text}");
        assert!(dsl::parse(text, sort).is_ok(), "parser rejects {text}");
    }
}

#[test]
fn mutations_agree_with_reference() {
    let stats = fuzz(10_000, 0x5eed);
    assert!(stats.clean(), "{stats:?}");
    assert!(stats.accepted > 100, "mutations too destructive: {} accepted", stats.accepted);
}

#[test]
fn error_positions_point_at_the_offending_token() {
    let e = dsl::parse("product(Z/4 Z/9)", Sort::Ring).unwrap_err();
    assert_eq!((e.line, e.column, e.offset), (1, 13, 12));
    assert_eq!(e.expected, vec!["','".to_string(), "'['".to_string()]);
    let e = dsl::parse("Z/12\n[x]/(x^2 + )", Sort::Ring).unwrap_err();
    assert_eq!((e.line, e.column), (2, 12));
    assert!(e.expected.contains(&"integer".to_string()));
    let e = dsl::parse("ideal(2 # 3)", Sort::Ideal).unwrap_err();
    assert_eq!(e.column, 9);
    assert!(e.found.contains('#'));
    let e = dsl::parse("", Sort::Ring).unwrap_err();
    assert_eq!(e.offset, 0);
}
