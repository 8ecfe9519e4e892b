use std::collections::BTreeSet;

use super::ast::{Ast, ElemExpr, HomExpr, IdealExpr, MultExpr, RingExpr, Term};
use super::lexer::{error_at, tokenize, Spanned, Tok};
use super::{ParseError, Sort};

const KEYWORDS: &[&str] = &["Z", "product", "quot", "amalg", "sub", "ideal", "mult", "id", "reduce", "table", "noone"];

/// Parses `text` as the given sort; the whole input must be consumed.
pub fn parse(text: &str, sort: Sort) -> Result<Ast, ParseError> {
    let mut p = Parser { text, toks: tokenize(text), pos: 0, expected: BTreeSet::new() };
    let ast = match sort {
        Sort::Ring => Ast::Ring(p.ring()?),
        Sort::Ideal => Ast::Ideal(p.ideal()?),
        Sort::MultSet => Ast::MultSet(p.mult()?),
        Sort::Element => Ast::Element(p.elem()?),
        Sort::Hom => Ast::Hom(p.hom()?),
    };
    p.expect_eof()?;
    Ok(ast)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
    /// Tokens that would have been accepted at the current position.
    expected: BTreeSet<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        self.expected.clear();
        tok
    }

    fn fail<T>(&mut self) -> Result<T, ParseError> {
        let here = &self.toks[self.pos];
        let expected = std::mem::take(&mut self.expected).into_iter().collect();
        Err(error_at(self.text, here.offset, here.tok.describe(), expected))
    }

    fn at_sym(&mut self, c: char) -> bool {
        self.expected.insert(format!("'{c}'"));
        *self.peek() == Tok::Sym(c)
    }

    fn at_keyword(&mut self, kw: &str) -> bool {
        self.expected.insert(format!("'{kw}'"));
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.at_sym(c) {
            self.advance();
            Ok(())
        } else {
            self.fail()
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.at_keyword(kw) {
            self.advance();
            Ok(())
        } else {
            self.fail()
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.expected.insert("integer".into());
        match *self.peek() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.fail(),
        }
    }

    /// A variable name: any identifier that is not a keyword.
    fn at_var(&mut self) -> bool {
        self.expected.insert("variable".into());
        matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
    }

    fn var(&mut self) -> Result<String, ParseError> {
        if self.at_var() {
            match self.advance() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            }
        } else {
            self.fail()
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        self.expected.insert("end of input".into());
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail()
        }
    }

    fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let mut ring = self.ring_base()?;
        while self.at_sym('[') {
            self.advance();
            let var = self.var()?;
            self.sym(']')?;
            self.sym('/')?;
            self.sym('(')?;
            let modulus = self.poly()?;
            self.sym(')')?;
            ring = RingExpr::PolyQuot { base: Box::new(ring), var, modulus };
        }
        Ok(ring)
    }

    fn ring_base(&mut self) -> Result<RingExpr, ParseError> {
        if self.at_keyword("Z") {
            self.advance();
            self.sym('/')?;
            return Ok(RingExpr::Zmod(self.int()?));
        }
        if self.at_keyword("product") {
            self.advance();
            self.sym('(')?;
            let left = self.ring()?;
            self.sym(',')?;
            let right = self.ring()?;
            self.sym(')')?;
            return Ok(RingExpr::Product(Box::new(left), Box::new(right)));
        }
        if self.at_keyword("quot") {
            self.advance();
            self.sym('(')?;
            let base = self.ring()?;
            self.sym(',')?;
            let ideal = self.ideal()?;
            self.sym(')')?;
            return Ok(RingExpr::Quot(Box::new(base), ideal));
        }
        if self.at_keyword("amalg") {
            self.advance();
            self.sym('(')?;
            let base = self.ring()?;
            self.sym(',')?;
            let hom = self.hom()?;
            self.sym(',')?;
            let ideal = self.ideal()?;
            self.sym(')')?;
            return Ok(RingExpr::Amalg(Box::new(base), hom, ideal));
        }
        if self.at_keyword("sub") {
            self.advance();
            self.sym('(')?;
            let parent = self.ring()?;
            let mut gens = Vec::new();
            while self.at_sym(',') {
                self.advance();
                gens.push(self.elem()?);
            }
            self.sym(')')?;
            return Ok(RingExpr::Sub(Box::new(parent), gens));
        }
        self.fail()
    }

    fn hom(&mut self) -> Result<HomExpr, ParseError> {
        if self.at_keyword("id") {
            self.advance();
            return Ok(HomExpr::Id);
        }
        if self.at_keyword("reduce") {
            self.advance();
            self.sym('(')?;
            let target = self.ring()?;
            self.sym(')')?;
            return Ok(HomExpr::Reduce(Box::new(target)));
        }
        if self.at_keyword("table") {
            self.advance();
            self.sym('(')?;
            let target = self.ring()?;
            let mut images = Vec::new();
            while self.at_sym(',') {
                self.advance();
                images.push(self.int()?);
            }
            self.sym(')')?;
            return Ok(HomExpr::Table(Box::new(target), images));
        }
        self.fail()
    }

    fn ideal(&mut self) -> Result<IdealExpr, ParseError> {
        self.keyword("ideal")?;
        self.sym('(')?;
        let mut gens = Vec::new();
        if !self.at_sym(')') {
            gens.push(self.elem()?);
            while self.at_sym(',') {
                self.advance();
                gens.push(self.elem()?);
            }
        }
        self.sym(')')?;
        Ok(IdealExpr { gens })
    }

    fn mult(&mut self) -> Result<MultExpr, ParseError> {
        self.keyword("mult")?;
        self.sym('(')?;
        let mut gens = vec![self.elem()?];
        while self.at_sym(',') {
            self.advance();
            gens.push(self.elem()?);
        }
        self.sym(')')?;
        let mut include_one = true;
        if self.at_sym('+') {
            self.advance();
            self.keyword("noone")?;
            include_one = false;
        }
        Ok(MultExpr { gens, include_one })
    }

    fn elem(&mut self) -> Result<ElemExpr, ParseError> {
        if self.at_sym('(') {
            self.advance();
            let left = self.elem()?;
            self.sym(',')?;
            let right = self.elem()?;
            self.sym(')')?;
            return Ok(ElemExpr::Pair(Box::new(left), Box::new(right)));
        }
        Ok(ElemExpr::Poly(self.poly()?))
    }

    fn poly(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = vec![self.term()?];
        while self.at_sym('+') {
            self.advance();
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.expected.insert("integer".into());
        if let Tok::Int(coeff) = *self.peek() {
            self.advance();
            if self.at_sym('*') {
                self.advance();
                let name = self.var()?;
                let exp = self.exponent()?;
                return Ok(Term { coeff, var: Some((name, exp)) });
            }
            return Ok(Term { coeff, var: None });
        }
        if self.at_var() {
            let name = self.var()?;
            let exp = self.exponent()?;
            return Ok(Term { coeff: 1, var: Some((name, exp)) });
        }
        self.fail()
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.at_sym('^') {
            self.advance();
            self.expected.insert("integer".into());
            return match *self.peek() {
                Tok::Int(e) if e <= u32::MAX as u64 => {
                    self.advance();
                    Ok(e as u32)
                }
                _ => self.fail(),
            };
        }
        Ok(1)
    }
}
