use std::sync::Arc;

use super::ast::{Ast, ElemExpr, HomExpr, IdealExpr, MultExpr, RingExpr, Term};
use super::parser::parse;
use super::Sort;
use crate::amalgam::amalgamate;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::mult::{mult_closure, MultSet};
use crate::ring::{FiniteRing, RingHom, Shape};

/// Polynomial moduli above this degree exceed every supported order cap.
const MAX_DEGREE: u32 = 64;

pub fn elaborate_ring(expr: &RingExpr) -> Result<Arc<FiniteRing>> {
    match expr {
        RingExpr::Zmod(n) => FiniteRing::zmod(*n),
        RingExpr::Product(l, r) => FiniteRing::product(&elaborate_ring(l)?, &elaborate_ring(r)?),
        RingExpr::PolyQuot { base, var, modulus } => {
            let base = elaborate_ring(base)?;
            let n = match base.shape() {
                Shape::Zmod { n } => *n as u64,
                _ => return Err(Error::UnsupportedModulus("polynomial quotients are only built over Z/n".into())),
            };
            let mut coeffs: Vec<u64> = Vec::new();
            for term in modulus {
                let degree = match &term.var {
                    None => 0,
                    Some((name, _)) if name != var => {
                        return Err(Error::Semantic(format!("modulus uses {name}, expected {var}")))
                    }
                    Some((_, e)) if *e > MAX_DEGREE => {
                        return Err(Error::Capacity { order: usize::MAX, cap: crate::ring::order_cap() })
                    }
                    Some((_, e)) => *e as usize,
                };
                if coeffs.len() <= degree {
                    coeffs.resize(degree + 1, 0);
                }
                coeffs[degree] = (coeffs[degree] + term.coeff % n) % n;
            }
            FiniteRing::poly_quotient(&base, var, &coeffs)
        }
        RingExpr::Quot(base, ideal) => {
            let base = elaborate_ring(base)?;
            let ideal = elaborate_ideal(ideal, &base)?;
            Ok(FiniteRing::quotient(&ideal)?.0)
        }
        RingExpr::Amalg(base, hom, ideal) => {
            let a = elaborate_ring(base)?;
            let f = elaborate_hom(hom, &a)?;
            let j = elaborate_ideal(ideal, f.target())?;
            Ok(amalgamate(&f, &j)?.ring)
        }
        RingExpr::Sub(parent, gens) => {
            let parent = elaborate_ring(parent)?;
            let gens = gens.iter().map(|g| elaborate_element(g, &parent)).collect::<Result<Vec<_>>>()?;
            Ok(FiniteRing::subring(&parent, &gens)?.0)
        }
    }
}

pub fn elaborate_hom(expr: &HomExpr, source: &Arc<FiniteRing>) -> Result<RingHom> {
    match expr {
        HomExpr::Id => Ok(RingHom::identity(source)),
        HomExpr::Reduce(target) => RingHom::reduction(source, &elaborate_ring(target)?),
        HomExpr::Table(target, images) => {
            let target = elaborate_ring(target)?;
            let images = images
                .iter()
                .map(|&i| usize::try_from(i).map_err(|_| Error::Semantic(format!("table entry {i} out of range"))))
                .collect::<Result<Vec<_>>>()?;
            RingHom::new(source.clone(), target, images)
        }
    }
}

pub fn elaborate_ideal(expr: &IdealExpr, ring: &Arc<FiniteRing>) -> Result<Ideal> {
    let gens = expr.gens.iter().map(|g| elaborate_element(g, ring)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::generated(ring, &gens))
}

pub fn elaborate_mult(expr: &MultExpr, ring: &Arc<FiniteRing>) -> Result<MultSet> {
    let gens = expr.gens.iter().map(|g| elaborate_element(g, ring)).collect::<Result<Vec<_>>>()?;
    mult_closure(ring, &gens, expr.include_one)
}

/// Canonical index of an element literal in `ring`.
pub fn elaborate_element(expr: &ElemExpr, ring: &FiniteRing) -> Result<usize> {
    match expr {
        ElemExpr::Poly(terms) => eval_poly(ring, terms),
        ElemExpr::Pair(l, r) => match ring.shape() {
            Shape::Product { left, right } => {
                Ok(ring.pair(elaborate_element(l, left)?, elaborate_element(r, right)?))
            }
            Shape::Amalgam { hom, j_members, .. } => {
                let a = elaborate_element(l, hom.source())?;
                let b = elaborate_element(r, hom.target())?;
                let j = hom.target().sub(b, hom.apply(a));
                let rank = j_members
                    .iter()
                    .position(|&m| m == j)
                    .ok_or_else(|| Error::Semantic("pair is not of the form (a, f(a) + j)".into()))?;
                Ok(a * j_members.len() + rank)
            }
            Shape::Quotient { base, .. } => Ok(coset_of(ring, elaborate_element(expr, base)?)),
            Shape::Subring { parent, .. } => in_subring(ring, elaborate_element(expr, parent)?),
            _ => Err(Error::Semantic("pair literal in a ring that is not a product or amalgamation".into())),
        },
    }
}

fn eval_poly(ring: &FiniteRing, terms: &[Term]) -> Result<usize> {
    let mut acc = ring.zero();
    for term in terms {
        let mut value = ring.from_int(term.coeff);
        if let Some((name, exp)) = &term.var {
            let x = variable(ring, name)?;
            value = ring.mul(value, ring.pow(x, *exp as usize));
        }
        acc = ring.add(acc, value);
    }
    Ok(acc)
}

fn variable(ring: &FiniteRing, name: &str) -> Result<usize> {
    match ring.shape() {
        Shape::PolyQuot { n, var, modulus } if var == name => {
            if modulus.len() > 2 {
                Ok(*n)
            } else {
                // degree one: x = -c0
                Ok((n - modulus[0]) % n)
            }
        }
        Shape::Quotient { base, .. } => Ok(coset_of(ring, variable(base, name)?)),
        Shape::Subring { parent, .. } => in_subring(ring, variable(parent, name)?),
        _ => Err(Error::Semantic(format!("ring has no variable {name}"))),
    }
}

/// Coset of a base element in a quotient ring.
fn coset_of(ring: &FiniteRing, x: usize) -> usize {
    let Shape::Quotient { base, kernel_gens, reps } = ring.shape() else {
        unreachable!("coset_of on a non-quotient ring")
    };
    let kernel = base.ideal_closure(kernel_gens.iter().copied());
    reps.iter()
        .position(|&r| kernel.contains(base.sub(x, r)))
        .expect("every element lies in some coset")
}

fn in_subring(ring: &FiniteRing, x: usize) -> Result<usize> {
    let Shape::Subring { members, .. } = ring.shape() else {
        unreachable!("in_subring on a non-subring")
    };
    members.binary_search(&x).map_err(|_| Error::Semantic("element is not in the subring".into()))
}

fn expect_sort<T>(ast: Ast, pick: impl FnOnce(Ast) -> Option<T>) -> T {
    pick(ast).expect("parser returns the requested sort")
}

pub fn parse_ring(text: &str) -> Result<Arc<FiniteRing>> {
    let expr = expect_sort(parse(text, Sort::Ring)?, |a| match a {
        Ast::Ring(r) => Some(r),
        _ => None,
    });
    elaborate_ring(&expr)
}

pub fn parse_ideal(text: &str, ring: &Arc<FiniteRing>) -> Result<Ideal> {
    let expr = expect_sort(parse(text, Sort::Ideal)?, |a| match a {
        Ast::Ideal(i) => Some(i),
        _ => None,
    });
    elaborate_ideal(&expr, ring)
}

pub fn parse_mult(text: &str, ring: &Arc<FiniteRing>) -> Result<MultSet> {
    let expr = expect_sort(parse(text, Sort::MultSet)?, |a| match a {
        Ast::MultSet(m) => Some(m),
        _ => None,
    });
    elaborate_mult(&expr, ring)
}

pub fn parse_element(text: &str, ring: &FiniteRing) -> Result<usize> {
    let expr = expect_sort(parse(text, Sort::Element)?, |a| match a {
        Ast::Element(e) => Some(e),
        _ => None,
    });
    elaborate_element(&expr, ring)
}

pub fn parse_hom(text: &str, source: &Arc<FiniteRing>) -> Result<RingHom> {
    let expr = expect_sort(parse(text, Sort::Hom)?, |a| match a {
        Ast::Hom(h) => Some(h),
        _ => None,
    });
    elaborate_hom(&expr, source)
}
