//! A PEG reference grammar for the text format and a mutation fuzzer that
//! compares the parser against it. Shared by the core and harness tests.

#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};

use pest::Parser as _;
use pest_derive::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snabs_core::dsl::{self, Sort};

#[derive(Parser)]
#[grammar_inline = r#"
WHITESPACE = _{ " " | "\t" | "\n" | "\r" | "\x0B" | "\x0C" }
ident_char = _{ ASCII_ALPHANUMERIC | "_" }
int = @{ ASCII_DIGIT+ }
keyword = @{ ("Z" | "product" | "quot" | "amalg" | "sub" | "ideal" | "mult" | "id" | "reduce" | "table" | "noone") ~ !ident_char }
var = @{ !keyword ~ (ASCII_ALPHA | "_") ~ ident_char* }
kw_z = @{ "Z" ~ !ident_char }
kw_product = @{ "product" ~ !ident_char }
kw_quot = @{ "quot" ~ !ident_char }
kw_amalg = @{ "amalg" ~ !ident_char }
kw_sub = @{ "sub" ~ !ident_char }
kw_ideal = @{ "ideal" ~ !ident_char }
kw_mult = @{ "mult" ~ !ident_char }
kw_id = @{ "id" ~ !ident_char }
kw_reduce = @{ "reduce" ~ !ident_char }
kw_table = @{ "table" ~ !ident_char }
kw_noone = @{ "noone" ~ !ident_char }

ring = { base ~ ("[" ~ var ~ "]" ~ "/" ~ "(" ~ poly ~ ")")* }
base = {
    kw_z ~ "/" ~ int
  | kw_product ~ "(" ~ ring ~ "," ~ ring ~ ")"
  | kw_quot ~ "(" ~ ring ~ "," ~ ideal ~ ")"
  | kw_amalg ~ "(" ~ ring ~ "," ~ hom ~ "," ~ ideal ~ ")"
  | kw_sub ~ "(" ~ ring ~ ("," ~ elem)* ~ ")"
}
ideal = { kw_ideal ~ "(" ~ (elem ~ ("," ~ elem)*)? ~ ")" }
mult = { kw_mult ~ "(" ~ elem ~ ("," ~ elem)* ~ ")" ~ ("+" ~ kw_noone)? }
elem = { "(" ~ elem ~ "," ~ elem ~ ")" | poly }
poly = { term ~ ("+" ~ term)* }
term = { int ~ ("*" ~ var ~ ("^" ~ int)?)? | var ~ ("^" ~ int)? }
hom = { kw_id | kw_reduce ~ "(" ~ ring ~ ")" | kw_table ~ "(" ~ ring ~ ("," ~ int)* ~ ")" }

ring_top = { SOI ~ ring ~ EOI }
ideal_top = { SOI ~ ideal ~ EOI }
mult_top = { SOI ~ mult ~ EOI }
elem_top = { SOI ~ elem ~ EOI }
hom_top = { SOI ~ hom ~ EOI }
"#]
struct Reference;

pub fn reference_accepts(text: &str, sort: Sort) -> bool {
    let rule = match sort {
        Sort::Ring => Rule::ring_top,
        Sort::Ideal => Rule::ideal_top,
        Sort::MultSet => Rule::mult_top,
        Sort::Element => Rule::elem_top,
        Sort::Hom => Rule::hom_top,
    };
    Reference::parse(rule, text).is_ok()
}

pub const SEEDS: &[(Sort, &str)] = &[
    (Sort::Ring, "Z/12"),
    (Sort::Ring, "Z/6[x]/(x^3)"),
    (Sort::Ring, "Z/2[x]/(x^2 + x + 1)"),
    (Sort::Ring, "product(Z/4, Z/9)"),
    (Sort::Ring, "quot(Z/2[x]/(x^3), ideal(x^2))"),
    (Sort::Ring, "amalg(Z/8, reduce(Z/4), ideal(2))"),
    (Sort::Ring, "amalg(Z/4, id, ideal(2))"),
    (Sort::Ring, "amalg(Z/4, table(Z/2, 0, 1, 0, 1), ideal())"),
    (Sort::Ring, "sub(product(Z/4, Z/4), (2, 0))"),
    (Sort::Ring, "Z/3[x]/(x^2)[y]/(y^2 + 2*y)"),
    (Sort::Ideal, "ideal()"),
    (Sort::Ideal, "ideal(2*x^2, 3)"),
    (Sort::Ideal, "ideal((2, 0), (0, 3))"),
    (Sort::MultSet, "mult(4)"),
    (Sort::MultSet, "mult(4, x + 1)+noone"),
    (Sort::MultSet, "mult((1, 2))"),
    (Sort::Element, "2*x^2 + 3"),
    (Sort::Element, "((1, x), 0)"),
    (Sort::Hom, "id"),
    (Sort::Hom, "reduce(Z/2)"),
    (Sort::Hom, "table(Z/3, 0, 1, 2)"),
];

const PIECES: &[&str] = &[
    "Z", "/", "(", ")", "[", "]", ",", "+", "*", "^", " ", "\n", "\t", "0", "1", "2", "12", "x", "y", "_v", "ideal",
    "mult", "product", "quot", "amalg", "sub", "id", "reduce", "table", "noone", "+noone", "#", "-", "é",
];

pub fn mutate(rng: &mut ChaCha8Rng, text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..rng.gen_range(1..=3) {
        let at = rng.gen_range(0..=chars.len());
        match rng.gen_range(0..5) {
            0 if at < chars.len() => {
                chars.remove(at);
            }
            1 if at < chars.len() => {
                chars[at] = PIECES[rng.gen_range(0..PIECES.len())].chars().next().unwrap();
            }
            2 if at < chars.len() => {
                let end = rng.gen_range(at..=chars.len());
                let piece: Vec<char> = chars[at..end].to_vec();
                let to = rng.gen_range(0..=chars.len());
                chars.splice(to..to, piece);
            }
            3 => chars.truncate(at),
            _ => {
                let piece = PIECES[rng.gen_range(0..PIECES.len())];
                chars.splice(at..at, piece.chars());
            }
        }
    }
    chars.into_iter().collect()
}

/// Integer literals beyond the parser's numeric range are rejected by design.
fn has_long_number(text: &str) -> bool {
    text.split(|c: char| !c.is_ascii_digit()).any(|run| run.len() > 9)
}

#[derive(Debug, Default)]
pub struct FuzzStats {
    pub rounds: usize,
    pub accepted: usize,
    /// Inputs the parser or the elaborator panicked on.
    pub panics: Vec<String>,
    /// Accepted by the parser but not by the reference grammar.
    pub accepted_invalid: Vec<String>,
    /// Rejected by the parser but accepted by the reference grammar.
    pub rejected_valid: Vec<String>,
    /// Errors whose position or expected-token list is missing.
    pub unpositioned: Vec<String>,
}

impl FuzzStats {
    pub fn clean(&self) -> bool {
        self.panics.is_empty() && self.accepted_invalid.is_empty() && self.rejected_valid.is_empty() && self.unpositioned.is_empty()
    }
}

pub fn fuzz(rounds: usize, seed: u64) -> FuzzStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats { rounds, ..FuzzStats::default() };
    for round in 0..rounds {
        let (sort, base) = SEEDS[round % SEEDS.len()];
        let text = mutate(&mut rng, base);
        let Ok(ours) = catch_unwind(|| dsl::parse(&text, sort)) else {
            stats.panics.push(text);
            continue;
        };
        match &ours {
            Ok(_) => {
                stats.accepted += 1;
                if !reference_accepts(&text, sort) {
                    stats.accepted_invalid.push(text.clone());
                }
            }
            Err(e) => {
                if e.offset > text.len() || e.expected.is_empty() || e.line == 0 || e.column == 0 {
                    stats.unpositioned.push(text.clone());
                }
                if !has_long_number(&text) && reference_accepts(&text, sort) {
                    stats.rejected_valid.push(text.clone());
                }
            }
        }
        if ours.is_ok() && sort == Sort::Ring && catch_unwind(AssertUnwindSafe(|| dsl::parse_ring(&text))).is_err() {
            stats.panics.push(text);
        }
    }
    stats
}
