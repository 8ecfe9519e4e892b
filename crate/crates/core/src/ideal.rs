//! Ideals as membership sets, and the operations on the ideal lattice.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ring::{check_cap, FiniteRing, RingHom};
use crate::set::ElemSet;

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: ElemSet,
    generators: OnceLock<Vec<usize>>,
}

/// Binary operations on ideals of one ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::render_ideal(self))
    }
}

pub(crate) fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn assert_same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) {
    assert!(same_ring(a, b), "ideal operation across different rings");
}

impl Ideal {
    /// Closure of `gens` under addition and multiplication by ring elements.
    pub fn generated(ring: &Arc<FiniteRing>, gens: &[usize]) -> Ideal {
        let members = ring.ideal_closure(gens.iter().copied());
        let generators = OnceLock::new();
        let _ = generators.set(gens.to_vec());
        Ideal { ring: ring.clone(), members, generators }
    }

    /// Wraps a set already known to be an ideal.
    pub fn from_members(ring: Arc<FiniteRing>, members: ElemSet) -> Ideal {
        debug_assert_eq!(members.universe(), ring.order());
        Ideal { ring, members, generators: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::generated(ring, &[])
    }

    pub fn unit(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::generated(ring, &[ring.one()])
    }

    pub fn principal(ring: &Arc<FiniteRing>, x: usize) -> Ideal {
        Ideal::generated(ring, &[x])
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
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

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.members.contains(self.ring.one())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Generators as supplied at construction, or a generating set found by
    /// [`Ideal::minimal_generators`] for ideals built from member sets.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| self.minimal_generators())
    }

    /// A generating set of least size (exhaustive up to two generators, greedy
    /// beyond), lexicographically least among those found. Empty for `(0)`.
    pub fn minimal_generators(&self) -> Vec<usize> {
        if self.is_zero() {
            return Vec::new();
        }
        // associates generate the same principal ideal, so class representatives suffice
        let nonzero: Vec<usize> = self
            .members
            .iter()
            .filter(|&x| x != self.ring.zero() && self.ring.associate_rep(x) == x)
            .collect();
        let principal_closure = |x: usize| self.ring.ideal_closure([x]);
        let mut singles = Vec::with_capacity(nonzero.len());
        for &x in &nonzero {
            let c = principal_closure(x);
            if c == self.members {
                return vec![x];
            }
            singles.push(c);
        }
        for (i, &x) in nonzero.iter().enumerate() {
            for (j, &y) in nonzero.iter().enumerate().skip(i + 1) {
                if self.ring.additive_span(singles[i].union(&singles[j]).iter()) == self.members {
                    return vec![x, y];
                }
            }
        }
        let mut gens = Vec::new();
        let mut current = ElemSet::from_iter(self.ring.order(), [self.ring.zero()]);
        for &x in &nonzero {
            if current == self.members {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.ring.ideal_closure(gens.iter().copied());
            }
        }
        gens
    }

    /// `{r : s r in I}`.
    pub fn colon(&self, s: usize) -> Ideal {
        let members = ElemSet::from_iter(
            self.ring.order(),
            (0..self.ring.order()).filter(|&r| self.members.contains(self.ring.mul(s, r))),
        );
        Ideal::from_members(self.ring.clone(), members)
    }

    /// `{r : r J ⊆ I}`.
    pub fn colon_ideal(&self, divisor: &Ideal) -> Ideal {
        assert_same_ring(&self.ring, &divisor.ring);
        let d: Vec<usize> = divisor.members.iter().collect();
        let members = ElemSet::from_iter(
            self.ring.order(),
            (0..self.ring.order()).filter(|&r| d.iter().all(|&j| self.members.contains(self.ring.mul(r, j)))),
        );
        Ideal::from_members(self.ring.clone(), members)
    }

    /// `{x : x^k in I for some k}`; powers up to the ring order suffice.
    pub fn radical(&self) -> Ideal {
        let ring = &self.ring;
        let members = ElemSet::from_iter(
            ring.order(),
            (0..ring.order()).filter(|&x| {
                let mut p = x;
                for _ in 0..ring.order() {
                    if self.members.contains(p) {
                        return true;
                    }
                    p = ring.mul(p, x);
                }
                false
            }),
        );
        Ideal::from_members(ring.clone(), members)
    }

    pub fn combine(&self, op: IdealOp, other: &Ideal) -> Ideal {
        match op {
            IdealOp::Sum => self.sum(other),
            IdealOp::Product => self.product(other),
            IdealOp::Intersection => self.intersection(other),
        }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_same_ring(&self.ring, &other.ring);
        let members = self.ring.additive_span(self.members.union(&other.members).iter());
        Ideal::from_members(self.ring.clone(), members)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        assert_same_ring(&self.ring, &other.ring);
        let products: Vec<usize> = self
            .members
            .iter()
            .flat_map(|x| other.members.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.ring.mul(x, y))
            .collect();
        Ideal::from_members(self.ring.clone(), self.ring.additive_span(products))
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        assert_same_ring(&self.ring, &other.ring);
        Ideal::from_members(self.ring.clone(), self.members.intersection(&other.members))
    }

    /// `I^k`, with `I^0 = R`.
    pub fn power(&self, k: usize) -> Ideal {
        (0..k).fold(Ideal::unit(&self.ring), |acc, _| acc.product(self))
    }

    /// `s I = {s i : i in I}` (an ideal, being the image of `I` under
    /// multiplication by `s`).
    pub fn scale(&self, s: usize) -> ElemSet {
        ElemSet::from_iter(self.ring.order(), self.members.iter().map(|x| self.ring.mul(s, x)))
    }

    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let outside: Vec<usize> = self.members.complement().iter().collect();
        outside
            .iter()
            .all(|&x| outside.iter().all(|&y| !self.members.contains(self.ring.mul(x, y))))
    }

    /// `ab in q` implies `a in q` or `b in sqrt(q)`.
    pub fn is_primary(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let rad = self.radical();
        let n = self.ring.order();
        (0..n).all(|a| {
            self.members.contains(a)
                || (0..n).all(|b| !self.members.contains(self.ring.mul(a, b)) || rad.contains(b))
        })
    }

    /// Each `a` lies in `I` or generates an ideal strictly containing `I`.
    pub fn is_divided(&self) -> bool {
        self.divided_violation().is_none()
    }

    pub fn divided_violation(&self) -> Option<usize> {
        (0..self.ring.order()).find(|&a| {
            if self.members.contains(a) {
                return false;
            }
            let principal = self.ring.ideal_closure([a]);
            !(self.members.is_subset(&principal) && principal != self.members)
        })
    }

    /// Image under a surjective homomorphism (an ideal of the target).
    pub fn image(&self, hom: &RingHom) -> Ideal {
        assert_same_ring(&self.ring, hom.source());
        let set = hom.image_set(&self.members);
        Ideal::from_members(hom.target().clone(), hom.target().ideal_closure(set.iter()))
    }

    pub fn preimage(&self, hom: &RingHom) -> Ideal {
        assert_same_ring(&self.ring, hom.target());
        Ideal::from_members(hom.source().clone(), hom.preimage_set(&self.members))
    }

    pub fn minimal_primes(&self) -> Result<Vec<Ideal>> {
        IdealLattice::new(&self.ring)?.minimal_primes(self)
    }

    pub fn primary_decomposition(&self) -> Result<Vec<Ideal>> {
        IdealLattice::new(&self.ring)?.primary_decomposition(self)
    }
}

/// The full ideal lattice of a ring, sorted by size and then lexicographically.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    ring: Arc<FiniteRing>,
    ideals: Vec<Ideal>,
    primes: Vec<usize>,
    maximals: Vec<usize>,
}

/// Every ideal of `ring`, closing the principal ideals under pairwise sums.
pub fn all_ideals(ring: &Arc<FiniteRing>) -> Result<Vec<Ideal>> {
    check_cap(ring.order())?;
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut found: Vec<ElemSet> = Vec::new();
    for x in 0..ring.order() {
        let p = ring.ideal_closure([x]);
        if seen.insert(p.clone()) {
            found.push(p);
        }
    }
    let mut frontier = 0;
    while frontier < found.len() {
        let current = found[frontier].clone();
        for k in 0..frontier {
            let s = ring.additive_span(current.union(&found[k]).iter());
            if seen.insert(s.clone()) {
                found.push(s);
            }
        }
        frontier += 1;
    }
    found.sort_by(|a, b| a.lattice_cmp(b));
    Ok(found.into_iter().map(|m| Ideal::from_members(ring.clone(), m)).collect())
}

impl IdealLattice {
    pub fn new(ring: &Arc<FiniteRing>) -> Result<IdealLattice> {
        let ideals = all_ideals(ring)?;
        let primes: Vec<usize> = (0..ideals.len()).filter(|&i| ideals[i].is_prime()).collect();
        let maximals = (0..ideals.len())
            .filter(|&i| ideals[i].is_proper() && ideals.iter().all(|j| !j.is_proper() || !ideals[i].is_subset(j) || *j == ideals[i]))
            .collect();
        Ok(IdealLattice { ring: ring.clone(), ideals, primes, maximals })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn proper(&self) -> impl Iterator<Item = &Ideal> {
        self.ideals.iter().filter(|i| i.is_proper())
    }

    pub fn primes(&self) -> impl Iterator<Item = &Ideal> {
        self.primes.iter().map(move |&i| &self.ideals[i])
    }

    pub fn maximals(&self) -> impl Iterator<Item = &Ideal> {
        self.maximals.iter().map(move |&i| &self.ideals[i])
    }

    /// Position of `ideal` in the sorted lattice.
    pub fn index_of(&self, ideal: &Ideal) -> Option<usize> {
        self.ideals
            .binary_search_by(|probe| probe.members().lattice_cmp(ideal.members()))
            .ok()
    }

    pub fn is_chained(&self) -> bool {
        self.ideals
            .iter()
            .all(|a| self.ideals.iter().all(|b| a.is_subset(b) || b.is_subset(a)))
    }

    pub fn minimal_primes(&self, ideal: &Ideal) -> Result<Vec<Ideal>> {
        if !ideal.is_proper() {
            return Err(Error::NoPrimes);
        }
        let over: Vec<&Ideal> = self.primes().filter(|p| ideal.is_subset(p)).collect();
        Ok(over
            .iter()
            .filter(|p| over.iter().all(|q| !q.is_subset(p) || q == *p))
            .map(|p| (*p).clone())
            .collect())
    }

    /// Smallest-first greedy cover by primary ideals containing `ideal`,
    /// then pruned to an irredundant list.
    pub fn primary_decomposition(&self, ideal: &Ideal) -> Result<Vec<Ideal>> {
        if !ideal.is_proper() {
            return Err(Error::Precondition("primary decomposition of the unit ideal".into()));
        }
        let mut chosen: Vec<Ideal> = Vec::new();
        let mut current = ElemSet::full(self.ring.order());
        for q in self.ideals.iter().filter(|q| ideal.is_subset(q) && q.is_primary()) {
            if current == *ideal.members() {
                break;
            }
            let next = current.intersection(q.members());
            if next != current {
                current = next;
                chosen.push(q.clone());
            }
        }
        if current != *ideal.members() {
            return Err(Error::Internal("primary components do not meet in the ideal".into()));
        }
        let mut k = 0;
        while k < chosen.len() {
            let rest = chosen
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .fold(ElemSet::full(self.ring.order()), |acc, (_, q)| acc.intersection(q.members()));
            if rest == *ideal.members() {
                chosen.remove(k);
            } else {
                k += 1;
            }
        }
        Ok(chosen)
    }
}
