//! Multiplicative subsets, saturation, and localization as an explicit quotient.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{same_ring, Ideal};
use crate::ring::{FiniteRing, RingHom};
use crate::set::ElemSet;
use crate::verdict::Verdict;

/// A multiplicatively closed subset of a ring. Need not contain 1.
#[derive(Clone)]
pub struct MultSet {
    ring: Arc<FiniteRing>,
    members: ElemSet,
    generators: Vec<usize>,
    contains_one: bool,
}

impl PartialEq for MultSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for MultSet {}

impl fmt::Debug for MultSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::render_multset(self))
    }
}

/// Multiplicative closure of `gens`, together with 1 when `include_one`.
pub fn mult_closure(ring: &Arc<FiniteRing>, gens: &[usize], include_one: bool) -> Result<MultSet> {
    if gens.is_empty() && !include_one {
        return Err(Error::Precondition("a multiplicative set needs a generator or 1".into()));
    }
    if let Some(&g) = gens.iter().find(|&&g| g >= ring.order()) {
        return Err(Error::Semantic(format!("element {g} is outside a ring of order {}", ring.order())));
    }
    let mut members = ElemSet::empty(ring.order());
    let mut list = Vec::new();
    if include_one {
        members.insert(ring.one());
        list.push(ring.one());
    }
    for &g in gens {
        if members.insert(g) {
            list.push(g);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &g in gens {
            let p = ring.mul(x, g);
            if members.insert(p) {
                list.push(p);
            }
        }
        i += 1;
    }
    let contains_one = members.contains(ring.one());
    Ok(MultSet { ring: ring.clone(), members, generators: gens.to_vec(), contains_one })
}

impl MultSet {
    pub fn closure(ring: &Arc<FiniteRing>, gens: &[usize], include_one: bool) -> Result<MultSet> {
        mult_closure(ring, gens, include_one)
    }

    /// `{1}`.
    pub fn trivial(ring: &Arc<FiniteRing>) -> MultSet {
        mult_closure(ring, &[], true).expect("the trivial set is well formed")
    }

    pub fn units(ring: &Arc<FiniteRing>) -> MultSet {
        MultSet::from_members(ring, ring.units().clone()).expect("units are multiplicatively closed")
    }

    /// Wraps a set that must already be multiplicatively closed and nonempty.
    pub fn from_members(ring: &Arc<FiniteRing>, members: ElemSet) -> Result<MultSet> {
        if members.is_empty() {
            return Err(Error::Precondition("a multiplicative set is never empty".into()));
        }
        for x in members.iter() {
            for y in members.iter() {
                if !members.contains(ring.mul(x, y)) {
                    return Err(Error::Precondition(format!("set is not closed: {x} * {y} is missing")));
                }
            }
        }
        let contains_one = members.contains(ring.one());
        let mut set = MultSet { ring: ring.clone(), members, generators: Vec::new(), contains_one };
        set.generators = set.minimal_generators();
        Ok(set)
    }

    /// `R \ P` for a prime ideal `P`.
    pub fn prime_complement(prime: &Ideal) -> Result<MultSet> {
        if !prime.is_prime() {
            return Err(Error::Precondition("complement of a non-prime ideal".into()));
        }
        MultSet::from_members(prime.ring(), prime.members().complement())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn contains_zero(&self) -> bool {
        self.members.contains(self.ring.zero())
    }

    /// Product of every member. It is a multiple of each member, so
    /// `I : s ⊆ I : t` for all `s` in the set.
    pub fn dominant(&self) -> usize {
        self.ring.product_of(self.members.iter())
    }

    /// Least member of `ideal`, if the two meet.
    pub fn meets(&self, ideal: &Ideal) -> Option<usize> {
        self.members.first_common(ideal.members())
    }

    pub fn check_disjoint(&self, ideal: &Ideal) -> Result<()> {
        match self.meets(ideal) {
            Some(x) => Err(Error::NotDisjoint(x)),
            None => Ok(()),
        }
    }

    /// Fewest generators whose closure (with or without 1, as in `self`)
    /// reproduces the set; greedy from the least index.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let one = self.ring.one();
        let mut gens = Vec::new();
        let mut current = if self.contains_one {
            ElemSet::from_iter(self.ring.order(), [one])
        } else {
            ElemSet::empty(self.ring.order())
        };
        if self.contains_one && self.members.len() == 1 {
            return vec![one];
        }
        for x in self.members.iter() {
            if current == self.members {
                break;
            }
            if current.contains(x) || (x == one && self.contains_one) {
                continue;
            }
            gens.push(x);
            current = mult_closure(&self.ring, &gens, self.contains_one)
                .expect("nonempty generators")
                .members;
        }
        gens
    }

    /// `{x : xy in S for some y}`.
    pub fn saturate(&self) -> MultSet {
        let ring = &self.ring;
        let members = ElemSet::from_iter(
            ring.order(),
            (0..ring.order()).filter(|&x| (0..ring.order()).any(|y| self.members.contains(ring.mul(x, y)))),
        );
        MultSet::from_members(ring, members).expect("a saturation is multiplicatively closed")
    }

    /// `(∩_{s in S} sR) ∩ S ≠ ∅`, with the least common multiple in `S` as
    /// witness. The dominant element always qualifies in a finite ring.
    pub fn is_strongly_multiplicative(&self) -> Verdict {
        let mut common = ElemSet::full(self.ring.order());
        for s in self.members.iter() {
            common = common.intersection(&self.ring.ideal_closure([s]));
        }
        match common.first_common(&self.members) {
            Some(w) => Verdict::yes(Some(w)),
            None => Verdict::no(Vec::new()),
        }
    }

    /// `{s t : s in S, t in T}` for two sets of one ring.
    pub fn product_set(&self, other: &MultSet) -> MultSet {
        assert!(same_ring(&self.ring, &other.ring), "product of sets in different rings");
        let members = ElemSet::from_iter(
            self.ring.order(),
            self.members.iter().flat_map(|s| other.members.iter().map(move |t| (s, t))).map(|(s, t)| self.ring.mul(s, t)),
        );
        MultSet::from_members(&self.ring, members).expect("product of multiplicative sets is closed")
    }

    /// `S × T` inside `product`, which must be the product of the two rings.
    pub fn cartesian(&self, other: &MultSet, product: &Arc<FiniteRing>) -> Result<MultSet> {
        match product.factors() {
            Some((l, r)) if same_ring(l, &self.ring) && same_ring(r, &other.ring) => {}
            _ => return Err(Error::Precondition("ring is not the product of the two factors".into())),
        }
        let members = ElemSet::from_iter(
            product.order(),
            self.members.iter().flat_map(|s| other.members.iter().map(move |t| product.pair(s, t))),
        );
        MultSet::from_members(product, members)
    }

    /// `f(S)` in the target of `hom`.
    pub fn image(&self, hom: &RingHom) -> MultSet {
        assert!(same_ring(&self.ring, hom.source()), "image of a set under a foreign homomorphism");
        MultSet::from_members(hom.target(), hom.image_set(&self.members)).expect("images of multiplicative sets are closed")
    }
}

/// `Sat_S(I) = ∪ I:s`, together with the dominant element `t`, for which
/// `Sat_S(I) = I:t`.
pub fn sat_ideal(ideal: &Ideal, set: &MultSet) -> Result<(Ideal, usize)> {
    set.check_disjoint(ideal)?;
    let ring = ideal.ring();
    let mut members = ElemSet::empty(ring.order());
    for s in set.iter() {
        for x in 0..ring.order() {
            if ideal.contains(ring.mul(s, x)) {
                members.insert(x);
            }
        }
    }
    Ok((Ideal::from_members(ring.clone(), members), set.dominant()))
}

/// `R_S` realized as `R/K`, `K = {x : sx = 0 for some s in S}`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub ring: Arc<FiniteRing>,
    pub map: RingHom,
    pub kernel: Ideal,
}

pub fn localize(ring: &Arc<FiniteRing>, set: &MultSet) -> Result<Localization> {
    if set.contains_zero() {
        return Err(Error::LocalizationIsZero);
    }
    let (kernel, _) = sat_ideal(&Ideal::zero(ring), set)?;
    let (local, map) = FiniteRing::quotient(&kernel)?;
    debug_assert!(set.iter().all(|s| local.is_unit(map.apply(s))));
    Ok(Localization { ring: local, map, kernel })
}

/// Localization at a prime `P`, i.e. at `R \ P`.
pub fn localize_at(prime: &Ideal) -> Result<Localization> {
    localize(prime.ring(), &MultSet::prime_complement(prime)?)
}

/// `I R_S`; its contraction is `Sat_S(I)`.
pub fn extend_ideal(ideal: &Ideal, loc: &Localization) -> Ideal {
    ideal.image(&loc.map)
}
