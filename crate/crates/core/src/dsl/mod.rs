//! Text format for rings, elements, ideals, multiplicative sets, and
//! homomorphisms.
//!
//! ```text
//! ring     := base { "[" IDENT "]" "/" "(" poly ")" }
//! base     := "Z" "/" INT | "product" "(" ring "," ring ")"
//!           | "quot" "(" ring "," ideal ")" | "amalg" "(" ring "," hom "," ideal ")"
//!           | "sub" "(" ring { "," elem } ")"
//! ideal    := "ideal" "(" [ elem { "," elem } ] ")"
//! mult     := "mult" "(" elem { "," elem } ")" [ "+" "noone" ]
//! elem     := poly | "(" elem "," elem ")"
//! poly     := term { "+" term }
//! term     := INT [ "*" IDENT [ "^" INT ] ] | IDENT [ "^" INT ]
//! hom      := "id" | "reduce" "(" ring ")" | "table" "(" ring { "," INT } ")"
//! ```

mod ast;
mod elaborate;
mod lexer;
mod parser;
mod render;

use std::fmt;

pub use ast::{Ast, ElemExpr, HomExpr, IdealExpr, MultExpr, RingExpr, Term};
pub use elaborate::{
    elaborate_element, elaborate_hom, elaborate_ideal, elaborate_mult, elaborate_ring, parse_element, parse_hom,
    parse_ideal, parse_mult, parse_ring,
};
pub use parser::parse;
pub use render::{render_element, render_hom, render_ideal, render_multset, render_ring};

/// What a piece of text is expected to denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Ring,
    Ideal,
    MultSet,
    Element,
    Hom,
}

/// Lexical or syntax error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    /// Byte offset into the input.
    pub offset: usize,
    pub found: String,
    /// Sorted, deduplicated token descriptions.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at line {}, column {}: found {}", self.line, self.column, self.found)?;
        if !self.expected.is_empty() {
            write!(f, ", expected {}", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
