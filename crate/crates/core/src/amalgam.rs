//! Amalgamated algebras `A ⋈^f J = {(a, f(a) + j)}` and their distinguished
//! ideals and multiplicative sets.

use std::sync::Arc;

use crate::classify::{check_witness, is_s_n_absorbing};
use crate::error::{Error, Result};
use crate::ideal::{same_ring, Ideal, IdealLattice};
use crate::mult::MultSet;
use crate::ring::{FiniteRing, HomLabel, RingHom, Shape};
use crate::set::ElemSet;
use crate::verdict::Check;

#[derive(Clone, Debug)]
pub struct Amalgamation {
    pub a: Arc<FiniteRing>,
    pub b: Arc<FiniteRing>,
    pub f: RingHom,
    pub j: Ideal,
    pub ring: Arc<FiniteRing>,
    /// `f(A) + J` as a subring of `B`, with its embedding.
    pub fj: Arc<FiniteRing>,
    pub fj_embed: RingHom,
    /// `A × B` and the inclusion of the amalgamation into it.
    pub ambient: Arc<FiniteRing>,
    pub inclusion: RingHom,
    pub pi1: RingHom,
    /// Onto `f(A) + J`.
    pub pi2: RingHom,
    /// `(a, b)` coordinates of each element.
    pairs: Vec<(usize, usize)>,
    /// Element with coordinates `(a, b)`, at `a * |B| + b`.
    lookup: Vec<Option<usize>>,
    /// Rank of each element of `B` inside `f(A) + J`.
    fj_rank: Vec<Option<usize>>,
}

fn label_of(f: &RingHom) -> HomLabel {
    if same_ring(f.source(), f.target()) && f.table().iter().enumerate().all(|(i, &x)| i == x) {
        return HomLabel::Id;
    }
    if matches!(f.source().shape(), Shape::Zmod { .. }) {
        return HomLabel::Reduce;
    }
    HomLabel::Table
}

/// Builds `A ⋈^f J` for `f : A -> B` and an ideal `J` of `B`.
pub fn amalgamate(f: &RingHom, j: &Ideal) -> Result<Amalgamation> {
    let (a, b) = (f.source().clone(), f.target().clone());
    if !same_ring(j.ring(), &b) {
        return Err(Error::Precondition("J must be an ideal of the target of f".into()));
    }
    let ring = FiniteRing::amalgam_from_pairs(f.clone(), label_of(f), j.minimal_generators(), j.members().to_vec())?;
    let pairs = match ring.shape() {
        Shape::Amalgam { pairs, .. } => pairs.clone(),
        _ => unreachable!("amalgam constructor returns an amalgam shape"),
    };
    let mut lookup = vec![None; a.order() * b.order()];
    for (x, &(p, q)) in pairs.iter().enumerate() {
        lookup[p * b.order() + q] = Some(x);
    }
    let fj_set = ElemSet::from_iter(
        b.order(),
        (0..a.order()).flat_map(|x| j.members().iter().map(move |y| (x, y))).map(|(x, y)| b.add(f.apply(x), y)),
    );
    let (fj, fj_embed) = FiniteRing::subring_on(&b, &fj_set)?;
    let mut fj_rank = vec![None; b.order()];
    for (i, m) in fj_set.iter().enumerate() {
        fj_rank[m] = Some(i);
    }
    let ambient = FiniteRing::product(&a, &b)?;
    let inclusion =
        RingHom::new_unchecked(ring.clone(), ambient.clone(), pairs.iter().map(|&(p, q)| ambient.pair(p, q)).collect());
    let pi1 = RingHom::new_unchecked(ring.clone(), a.clone(), pairs.iter().map(|&(p, _)| p).collect());
    let pi2 = RingHom::new_unchecked(
        ring.clone(),
        fj.clone(),
        pairs.iter().map(|&(_, q)| fj_rank[q].expect("second coordinates lie in f(A)+J")).collect(),
    );
    Ok(Amalgamation {
        a,
        b,
        f: f.clone(),
        j: j.clone(),
        ring,
        fj,
        fj_embed,
        ambient,
        inclusion,
        pi1,
        pi2,
        pairs,
        lookup,
        fj_rank,
    })
}

impl Amalgamation {
    pub fn pair(&self, x: usize) -> (usize, usize) {
        self.pairs[x]
    }

    /// The element with coordinates `(a, b)`, if it lies in the amalgamation.
    pub fn element(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup[a * self.b.order() + b]
    }

    /// Index in `f(A) + J` of an element of `B`.
    pub fn fj_index(&self, b: usize) -> Option<usize> {
        self.fj_rank[b]
    }

    /// `(s, f(s))`.
    pub fn lift(&self, s: usize) -> usize {
        self.element(s, self.f.apply(s)).expect("(s, f(s)) lies in the amalgamation")
    }

    /// `S^{⋈f} = {(s, f(s)) : s in S}`.
    pub fn lift_mult_set(&self, set: &MultSet) -> MultSet {
        assert!(same_ring(set.ring(), &self.a), "lifted set must live in A");
        let members = ElemSet::from_iter(self.ring.order(), set.iter().map(|s| self.lift(s)));
        MultSet::from_members(&self.ring, members).expect("lift of a multiplicative set is closed")
    }

    /// `f(S)` as a multiplicative set of `f(A) + J`.
    pub fn image_mult_set(&self, set: &MultSet) -> MultSet {
        let members = ElemSet::from_iter(self.fj.order(), set.iter().map(|s| self.fj_rank[self.f.apply(s)].unwrap()));
        MultSet::from_members(&self.fj, members).expect("image of a multiplicative set is closed")
    }

    /// An ideal of `f(A) + J` given by elements of `B`.
    pub fn fj_ideal(&self, gens_in_b: &[usize]) -> Result<Ideal> {
        let gens = gens_in_b
            .iter()
            .map(|&g| self.fj_rank[g].ok_or_else(|| Error::Semantic(format!("element {g} of B is not in f(A)+J"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::generated(&self.fj, &gens))
    }

    fn ideal_where(&self, pred: impl Fn(usize, usize) -> bool) -> Result<Ideal> {
        let members = ElemSet::from_iter(
            self.ring.order(),
            (0..self.ring.order()).filter(|&x| {
                let (p, q) = self.pairs[x];
                pred(p, q)
            }),
        );
        if self.ring.ideal_closure(members.iter()) != members {
            return Err(Error::Internal("distinguished set is not an ideal".into()));
        }
        Ok(Ideal::from_members(self.ring.clone(), members))
    }

    /// `I ⋈^f J = {(i, f(i) + j)}`.
    pub fn bowtie_j(&self, i: &Ideal) -> Result<Ideal> {
        assert!(same_ring(i.ring(), &self.a));
        self.ideal_where(|p, _| i.contains(p))
    }

    /// `K̄^f = {(a, f(a) + j) : f(a) + j in K}` for an ideal `K` of `f(A) + J`.
    pub fn k_bar(&self, k: &Ideal) -> Result<Ideal> {
        assert!(same_ring(k.ring(), &self.fj));
        self.ideal_where(|_, q| k.contains(self.fj_rank[q].unwrap()))
    }

    /// `(I × K)‾^f = {(i, f(i) + j) : f(i) + j in K}`.
    pub fn ixk_bar(&self, i: &Ideal, k: &Ideal) -> Result<Ideal> {
        self.ideal_where(|p, q| i.contains(p) && k.contains(self.fj_rank[q].unwrap()))
    }

    /// Checks `f(I) J ⊆ H ⊆ J` for an ideal `H` of `f(A) + J`.
    pub fn check_h(&self, i: &Ideal, h: &Ideal) -> Result<()> {
        assert!(same_ring(h.ring(), &self.fj));
        let h_in_b = self.fj_embed.image_set(h.members());
        if !h_in_b.is_subset(self.j.members()) {
            return Err(Error::Precondition("H is not contained in J".into()));
        }
        for x in i.members().iter() {
            for y in self.j.members().iter() {
                if !h_in_b.contains(self.b.mul(self.f.apply(x), y)) {
                    return Err(Error::Precondition("f(I)J is not contained in H".into()));
                }
            }
        }
        Ok(())
    }

    /// `I ⋈^f H = {(i, f(i) + h)}`.
    pub fn bowtie_h(&self, i: &Ideal, h: &Ideal) -> Result<Ideal> {
        self.check_h(i, h)?;
        let h_in_b = self.fj_embed.image_set(h.members());
        self.ideal_where(|p, q| i.contains(p) && h_in_b.contains(self.b.sub(q, self.f.apply(p))))
    }

    pub fn special_ideals(&self, i: &Ideal, k: &Ideal, h: &Ideal) -> Result<SpecialIdeals> {
        Ok(SpecialIdeals {
            i_bowtie_j: self.bowtie_j(i)?,
            k_bar: self.k_bar(k)?,
            ixk_bar: self.ixk_bar(i, k)?,
            i_bowtie_h: self.bowtie_h(i, h)?,
        })
    }

    /// `{0} × J`, the kernel of `π₁`.
    pub fn zero_times_j(&self) -> Result<Ideal> {
        self.ideal_where(|p, _| p == self.a.zero())
    }

    /// `f⁻¹(J) × {0}`, the kernel of `π₂`.
    pub fn finv_j_times_zero(&self) -> Result<Ideal> {
        self.ideal_where(|_, q| q == self.b.zero())
    }
}

#[derive(Clone, Debug)]
pub struct SpecialIdeals {
    pub i_bowtie_j: Ideal,
    pub k_bar: Ideal,
    pub ixk_bar: Ideal,
    pub i_bowtie_h: Ideal,
}

/// The three disjointness transfers for `I`, `K`, and `S`.
pub fn disjointness_lemma_check(amal: &Amalgamation, i: &Ideal, k: &Ideal, set: &MultSet) -> Result<Vec<Check>> {
    let lifted = amal.lift_mult_set(set);
    let fs = amal.image_mult_set(set);
    let ij = amal.bowtie_j(i)?;
    let kb = amal.k_bar(k)?;
    let ikb = amal.ixk_bar(i, k)?;
    let i_disjoint = set.meets(i).is_none();
    let k_disjoint = fs.meets(k).is_none();
    let mut checks = vec![
        Check::new("1", i_disjoint == lifted.meets(&ij).is_none(), format!("I∩S empty: {i_disjoint}")),
        Check::new("2", k_disjoint == lifted.meets(&kb).is_none(), format!("K∩f(S) empty: {k_disjoint}")),
    ];
    if i_disjoint && k_disjoint {
        checks.push(Check::new("3", lifted.meets(&ikb).is_none(), "both disjoint"));
    }
    Ok(checks)
}

/// Clauses (1)-(3) of the transfer theorem for `I ⋈^f J`, `K̄^f`, and
/// `(I × K)‾^f`. Requires `I ∩ S = ∅` and `K ∩ f(S) = ∅`.
pub fn verify_transfer(
    amal: &Amalgamation,
    i: &Ideal,
    k: &Ideal,
    set: &MultSet,
    m: usize,
    n: usize,
) -> Result<Vec<Check>> {
    set.check_disjoint(i)?;
    let fs = amal.image_mult_set(set);
    if fs.meets(k).is_some() {
        return Err(Error::Precondition("K meets f(S)".into()));
    }
    let lifted = amal.lift_mult_set(set);
    let ij = amal.bowtie_j(i)?;
    let kb = amal.k_bar(k)?;
    let ikb = amal.ixk_bar(i, k)?;
    let left1 = is_s_n_absorbing(i, set, n)?.holds;
    let right1 = is_s_n_absorbing(&ij, &lifted, n)?.holds;
    let left2 = is_s_n_absorbing(k, &fs, n)?.holds;
    let right2 = is_s_n_absorbing(&kb, &lifted, n)?.holds;
    let mut checks = vec![
        Check::new("1", left1 == right1, format!("I: {left1}, I⋈J: {right1}")),
        Check::new("2", left2 == right2, format!("K: {left2}, K̄: {right2}")),
    ];
    let i_m = is_s_n_absorbing(i, set, m)?.holds;
    if i_m && left2 {
        let ok = is_s_n_absorbing(&ikb, &lifted, m + n)?.holds;
        checks.push(Check::new("3", ok, format!("(I×K)‾ at m+n = {}: {ok}", m + n)));
    }
    Ok(checks)
}

/// `(A, m)` local, and `f⁻¹(Q) ≠ m` for every prime `Q` of `B` not containing `J`.
fn local_setting(amal: &Amalgamation) -> Result<Ideal> {
    let lat_a = IdealLattice::new(&amal.a)?;
    let maximals: Vec<&Ideal> = lat_a.maximals().collect();
    if maximals.len() != 1 {
        return Err(Error::Precondition("A is not local".into()));
    }
    let m = maximals[0].clone();
    let lat_b = IdealLattice::new(&amal.b)?;
    for q in lat_b.primes() {
        if !amal.j.is_subset(q) && q.preimage(&amal.f) == m {
            return Err(Error::Precondition("f⁻¹(Q) = m for a prime Q outside V(J)".into()));
        }
    }
    Ok(m)
}

/// The local-ring lemma for `I` and `H`: the radical identity (when
/// `sqrt(I) = m`) and primary transport, for a proper ideal `I`.
pub fn local_ring_lemma_check(amal: &Amalgamation, i: &Ideal, h: &Ideal) -> Result<Vec<Check>> {
    let m = local_setting(amal)?;
    if !i.is_proper() {
        return Err(Error::Precondition("I is not proper".into()));
    }
    amal.check_h(i, h)?;
    let ih = amal.bowtie_h(i, h)?;
    let mj = amal.bowtie_j(&m)?;
    let rad = ih.radical();
    let mut checks = Vec::new();
    if i.radical() == m {
        checks.push(Check::new("radical", rad == mj, "sqrt(I⋈H) = m⋈J"));
    }
    let left = i.is_primary() && i.radical() == m;
    let right = ih.is_primary() && rad == mj;
    checks.push(Check::new("primary", left == right, format!("I m-primary: {left}, I⋈H (m⋈J)-primary: {right}")));
    Ok(checks)
}

/// The local-amalgam equivalence: `I` is associated to `s` at level `n`
/// iff `I ⋈^f H` is associated to `(s, f(s))`. Hypotheses are checked
/// literally and reported as precondition errors.
pub fn verify_local_amalgam(
    amal: &Amalgamation,
    i: &Ideal,
    h: &Ideal,
    set: &MultSet,
    s: usize,
    n: usize,
) -> Result<Vec<Check>> {
    let m = local_setting(amal)?;
    if !i.is_primary() || i.radical() != m {
        return Err(Error::Precondition("I is not m-primary".into()));
    }
    let fm = ElemSet::from_iter(amal.b.order(), m.members().iter().map(|x| amal.f.apply(x)));
    if fm.iter().any(|x| amal.j.members().iter().any(|y| amal.b.mul(x, y) != amal.b.zero())) {
        return Err(Error::Precondition("f(m)J is not zero".into()));
    }
    amal.check_h(i, h)?;
    if !set.contains(s) {
        return Err(Error::Precondition(format!("{s} is not in S")));
    }
    set.check_disjoint(i)?;
    let h_in_b = amal.fj_embed.image_set(h.members());
    let fs = amal.f.apply(s);
    if amal.j.power(n).members().iter().any(|x| !h_in_b.contains(amal.b.mul(fs, x))) {
        return Err(Error::Precondition("f(s)J^n is not contained in H".into()));
    }
    let ih = amal.bowtie_h(i, h)?;
    let left = check_witness(i, s, n)?.holds;
    let right = check_witness(&ih, amal.lift(s), n)?.holds;
    Ok(vec![Check::new("equivalence", left == right, format!("I assoc s: {left}, I⋈H assoc (s,f(s)): {right}"))])
}
