//! Finite commutative rings with identity, compiled to dense operation tables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, HomLaw, Result};
use crate::ideal::Ideal;
use crate::set::ElemSet;

pub const DEFAULT_ORDER_CAP: usize = 256;
/// Tables store indices as `u16`.
pub const MAX_ORDER_CAP: usize = u16::MAX as usize;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Sets the process-wide cap on the order of constructed rings.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.clamp(2, MAX_ORDER_CAP), Ordering::Relaxed);
}

pub(crate) fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        return Err(Error::Capacity { order, cap });
    }
    Ok(())
}

/// How the canonical indices of a ring were produced. Drives element
/// literals, rendering, and recovery of factors/parents.
#[derive(Clone, Debug)]
pub enum Shape {
    Zmod {
        n: usize,
    },
    /// Elements are coefficient vectors `c_0 + c_1 x + ...` of length `deg`,
    /// encoded as `sum c_i n^i`.
    PolyQuot {
        n: usize,
        var: String,
        /// Monic modulus, low degree first; `modulus.len() == deg + 1`.
        modulus: Vec<usize>,
    },
    /// Pair `(x, y)` is stored at `x * right.order() + y`.
    Product {
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
    },
    /// Cosets ordered by their least representative.
    Quotient {
        base: Arc<FiniteRing>,
        kernel_gens: Vec<usize>,
        reps: Vec<usize>,
    },
    /// Subring of `parent`; `members` ascending, index = rank.
    Subring {
        parent: Arc<FiniteRing>,
        gens: Vec<usize>,
        members: Vec<usize>,
    },
    /// `(a, f(a) + j)` stored at `a * |J| + rank(j)`; `pairs` holds the
    /// coordinates in `A x B`.
    Amalgam {
        hom: RingHom,
        hom_label: HomLabel,
        j_gens: Vec<usize>,
        j_members: Vec<usize>,
        pairs: Vec<(usize, usize)>,
    },
}

/// Provenance of an amalgamation homomorphism, used when rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomLabel {
    Id,
    Reduce,
    Table,
}

pub struct FiniteRing {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    units: ElemSet,
    nilpotents: ElemSet,
    inverse: Vec<Option<u16>>,
    associate_rep: Vec<u16>,
    nonunit_reps: Vec<usize>,
    jacobson_nilpotency: usize,
    shape: Shape,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", crate::dsl::render_ring(self), self.order)
    }
}

impl FiniteRing {
    /// Builds a ring from `op(i, j)` closures over `0..order`. Every
    /// structural constructor funnels through here.
    fn from_ops(
        order: usize,
        zero: usize,
        one: usize,
        shape: Shape,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Arc<FiniteRing>> {
        check_cap(order)?;
        let mut add_t = vec![0u16; order * order];
        let mut mul_t = vec![0u16; order * order];
        for x in 0..order {
            for y in x..order {
                let s = add(x, y) as u16;
                let p = mul(x, y) as u16;
                add_t[x * order + y] = s;
                add_t[y * order + x] = s;
                mul_t[x * order + y] = p;
                mul_t[y * order + x] = p;
            }
        }
        Ok(Arc::new(Self::finish(order, add_t, mul_t, zero, one, shape)))
    }

    fn finish(
        order: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: usize,
        one: usize,
        shape: Shape,
    ) -> FiniteRing {
        let mut neg = vec![0u16; order];
        for x in 0..order {
            for y in 0..order {
                if add[x * order + y] as usize == zero {
                    neg[x] = y as u16;
                    break;
                }
            }
        }
        let mut inverse = vec![None; order];
        let mut units = ElemSet::empty(order);
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] as usize == one {
                    inverse[x] = Some(y as u16);
                    units.insert(x);
                    break;
                }
            }
        }
        let mut nilpotents = ElemSet::empty(order);
        for x in 0..order {
            let mut p = x;
            for _ in 0..order {
                if p == zero {
                    break;
                }
                p = mul[p * order + x] as usize;
            }
            if p == zero {
                nilpotents.insert(x);
            }
        }
        let unit_list = units.to_vec();
        let associate_rep: Vec<u16> = (0..order)
            .map(|x| {
                unit_list
                    .iter()
                    .map(|&u| mul[u * order + x])
                    .min()
                    .unwrap_or(x as u16)
            })
            .collect();
        let nonunit_reps = (0..order)
            .filter(|&x| !units.contains(x) && associate_rep[x] as usize == x)
            .collect();
        let mut ring = FiniteRing {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            units,
            nilpotents,
            inverse,
            associate_rep,
            nonunit_reps,
            jacobson_nilpotency: 1,
            shape,
        };
        ring.jacobson_nilpotency = ring.compute_jacobson_nilpotency();
        ring
    }

    /// For a finite ring the Jacobson radical is the nilradical.
    fn compute_jacobson_nilpotency(&self) -> usize {
        let radical = self.nilpotents.clone();
        let mut power = radical.clone();
        let mut t = 1;
        while !(power.len() == 1 && power.contains(self.zero)) {
            let products: Vec<usize> = power
                .iter()
                .flat_map(|x| radical.iter().map(move |y| (x, y)))
                .map(|(x, y)| self.mul(x, y))
                .collect();
            power = self.additive_span(products);
            t += 1;
        }
        t
    }

    pub fn zmod(n: u64) -> Result<Arc<FiniteRing>> {
        if n < 2 {
            return Err(Error::InvalidOrder(n));
        }
        if n > order_cap() as u64 {
            return Err(Error::Capacity { order: n.min(usize::MAX as u64) as usize, cap: order_cap() });
        }
        let n = n as usize;
        Self::from_ops(n, 0, 1, Shape::Zmod { n }, |x, y| (x + y) % n, |x, y| (x * y) % n)
    }

    pub fn product(left: &Arc<FiniteRing>, right: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
        let m = right.order;
        let order = left
            .order
            .checked_mul(m)
            .ok_or(Error::Capacity { order: usize::MAX, cap: order_cap() })?;
        check_cap(order)?;
        let (l, r) = (left.clone(), right.clone());
        Self::from_ops(
            order,
            left.zero * m + right.zero,
            left.one * m + right.one,
            Shape::Product { left: left.clone(), right: right.clone() },
            |x, y| l.add(x / m, y / m) * m + r.add(x % m, y % m),
            |x, y| l.mul(x / m, y / m) * m + r.mul(x % m, y % m),
        )
    }

    /// `Z/n[var]/(modulus)` for a monic modulus given low degree first.
    pub fn poly_quotient(base: &FiniteRing, var: &str, modulus: &[u64]) -> Result<Arc<FiniteRing>> {
        let n = match base.shape {
            Shape::Zmod { n } => n,
            _ => {
                return Err(Error::UnsupportedModulus(
                    "polynomial quotients are only built over Z/n".into(),
                ))
            }
        };
        let mut coeffs: Vec<usize> = modulus.iter().map(|&c| (c % n as u64) as usize).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::UnsupportedModulus("modulus must have degree at least 1".into()));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::UnsupportedModulus("modulus is not monic".into()));
        }
        let deg = coeffs.len() - 1;
        let order = (n as u128).checked_pow(deg as u32).unwrap_or(u128::MAX);
        if order > order_cap() as u128 {
            return Err(Error::Capacity { order: order.min(usize::MAX as u128) as usize, cap: order_cap() });
        }
        let order = order as usize;
        let decode = |mut x: usize| {
            let mut c = vec![0usize; deg];
            for slot in c.iter_mut() {
                *slot = x % n;
                x /= n;
            }
            c
        };
        let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * n + d);
        let reduce = |mut prod: Vec<usize>| {
            // x^deg = -(c_0 + ... + c_{deg-1} x^{deg-1})
            for top in (deg..prod.len()).rev() {
                let lead = prod[top];
                if lead == 0 {
                    continue;
                }
                prod[top] = 0;
                for (i, &c) in coeffs.iter().take(deg).enumerate() {
                    let shift = top - deg + i;
                    prod[shift] = (prod[shift] + n - (lead * c) % n) % n;
                }
            }
            prod.truncate(deg);
            prod
        };
        Self::from_ops(
            order,
            0,
            1,
            Shape::PolyQuot { n, var: var.to_string(), modulus: coeffs.clone() },
            |x, y| {
                let (a, b) = (decode(x), decode(y));
                let s: Vec<usize> = a.iter().zip(&b).map(|(p, q)| (p + q) % n).collect();
                encode(&s)
            },
            |x, y| {
                let (a, b) = (decode(x), decode(y));
                let mut prod = vec![0usize; 2 * deg - 1];
                for (i, p) in a.iter().enumerate() {
                    for (j, q) in b.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + p * q) % n;
                    }
                }
                encode(&reduce(prod))
            },
        )
    }

    /// `R/I` with coset representatives chosen as the least index per coset,
    /// plus the canonical surjection. Quotienting by `(0)` returns `R` itself.
    pub fn quotient(ideal: &Ideal) -> Result<(Arc<FiniteRing>, RingHom)> {
        let base = ideal.ring();
        if ideal.is_unit_ideal() {
            return Err(Error::DegenerateQuotient);
        }
        if ideal.is_zero() {
            return Ok((base.clone(), RingHom::identity(base)));
        }
        let mut coset_of = vec![usize::MAX; base.order];
        let mut reps = Vec::new();
        for x in 0..base.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for i in ideal.members().iter() {
                coset_of[base.add(x, i)] = idx;
            }
        }
        let (b, r, c) = (base.clone(), reps.clone(), coset_of.clone());
        let ring = Self::from_ops(
            reps.len(),
            coset_of[base.zero],
            coset_of[base.one],
            Shape::Quotient { base: base.clone(), kernel_gens: ideal.minimal_generators(), reps },
            |x, y| c[b.add(r[x], r[y])],
            |x, y| c[b.mul(r[x], r[y])],
        )?;
        let hom = RingHom::new_unchecked(base.clone(), ring.clone(), coset_of);
        Ok((ring, hom))
    }

    /// The subring of `parent` generated by `gens` (always contains 1),
    /// with its embedding into `parent`.
    pub fn subring(parent: &Arc<FiniteRing>, gens: &[usize]) -> Result<(Arc<FiniteRing>, RingHom)> {
        let members = parent.subring_closure(gens.iter().copied());
        Self::subring_on(parent, &members)
    }

    /// Subring with the given member set, which must already be closed.
    pub(crate) fn subring_on(parent: &Arc<FiniteRing>, members: &ElemSet) -> Result<(Arc<FiniteRing>, RingHom)> {
        let list = members.to_vec();
        let mut rank = vec![usize::MAX; parent.order];
        for (i, &m) in list.iter().enumerate() {
            rank[m] = i;
        }
        let gens = parent.subring_generators(members);
        let (p, l, r) = (parent.clone(), list.clone(), rank.clone());
        let ring = Self::from_ops(
            list.len(),
            rank[parent.zero],
            rank[parent.one],
            Shape::Subring { parent: parent.clone(), gens, members: list.clone() },
            |x, y| r[p.add(l[x], l[y])],
            |x, y| r[p.mul(l[x], l[y])],
        )?;
        let embed = RingHom::new_unchecked(ring.clone(), parent.clone(), list);
        Ok((ring, embed))
    }

    pub(crate) fn amalgam_from_pairs(
        hom: RingHom,
        hom_label: HomLabel,
        j_gens: Vec<usize>,
        j_members: Vec<usize>,
    ) -> Result<Arc<FiniteRing>> {
        let a = hom.source().clone();
        let b = hom.target().clone();
        let jn = j_members.len();
        let order = a.order * jn;
        check_cap(order)?;
        let mut j_rank = vec![usize::MAX; b.order];
        for (i, &j) in j_members.iter().enumerate() {
            j_rank[j] = i;
        }
        let pairs: Vec<(usize, usize)> = (0..order)
            .map(|x| {
                let (ai, ji) = (x / jn, x % jn);
                (ai, b.add(hom.apply(ai), j_members[ji]))
            })
            .collect();
        let code = |a_idx: usize, b_idx: usize| -> usize {
            let j = b.sub(b_idx, hom.apply(a_idx));
            a_idx * jn + j_rank[j]
        };
        let zero = code(a.zero, b.zero);
        let one = code(a.one, b.one);
        let pr = pairs.clone();
        let shape = Shape::Amalgam { hom: hom.clone(), hom_label, j_gens, j_members, pairs };
        Self::from_ops(
            order,
            zero,
            one,
            shape,
            |x, y| code(a.add(pr[x].0, pr[y].0), b.add(pr[x].1, pr[y].1)),
            |x, y| code(a.mul(pr[x].0, pr[y].0), b.mul(pr[x].1, pr[y].1)),
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }
    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }
    #[inline]
    pub fn one(&self) -> usize {
        self.one
    }
    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y] as usize
    }
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }
    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }
    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    pub fn product_of<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.one, |acc, x| self.mul(acc, x))
    }

    /// `k * 1` in the ring.
    pub fn from_int(&self, k: u64) -> usize {
        let mut acc = self.zero;
        // the additive order of 1 divides the ring order
        for _ in 0..(k % self.order as u64) {
            acc = self.add(acc, self.one);
        }
        acc
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.inverse[x].map(usize::from)
    }

    pub fn units(&self) -> &ElemSet {
        &self.units
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units.contains(x)
    }

    pub fn nilpotents(&self) -> &ElemSet {
        &self.nilpotents
    }

    pub fn is_field(&self) -> bool {
        self.units.len() + 1 == self.order
    }

    /// Least `t` with `J(R)^t = (0)`.
    pub fn jacobson_nilpotency(&self) -> usize {
        self.jacobson_nilpotency
    }

    /// Least element of the class `{u * x : u a unit}`.
    #[inline]
    pub fn associate_rep(&self, x: usize) -> usize {
        self.associate_rep[x] as usize
    }

    /// One representative (the least index) per associate class of nonunits,
    /// ascending.
    pub fn nonunit_reps(&self) -> &[usize] {
        &self.nonunit_reps
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Upper bound on the nilpotency of `J(R)` and on every omega value:
    /// `floor(log2(order))`.
    pub fn log2_bound(&self) -> usize {
        (usize::BITS - 1 - self.order.leading_zeros()) as usize
    }

    pub fn elem(&self, index: usize) -> RingElement<'_> {
        assert!(index < self.order, "element index {index} out of range");
        RingElement { ring: self, index }
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement<'_>> {
        (0..self.order).map(move |i| RingElement { ring: self, index: i })
    }

    /// Additive subgroup generated by `items`.
    pub fn additive_span<I: IntoIterator<Item = usize>>(&self, items: I) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        set.insert(self.zero);
        let mut members = vec![self.zero];
        for c in items {
            self.extend_span(&mut set, &mut members, c);
        }
        set
    }

    fn extend_span(&self, set: &mut ElemSet, members: &mut Vec<usize>, c: usize) {
        if set.contains(c) {
            return;
        }
        let base = members.clone();
        let mut k = c;
        while !set.contains(k) {
            for &h in &base {
                let v = self.add(h, k);
                if set.insert(v) {
                    members.push(v);
                }
            }
            k = self.add(k, c);
        }
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        set.insert(self.zero);
        let mut members = vec![self.zero];
        for g in gens {
            if set.contains(g) {
                continue;
            }
            for r in 0..self.order {
                self.extend_span(&mut set, &mut members, self.mul(g, r));
            }
        }
        set
    }

    /// Smallest subring (with identity) containing `gens`.
    pub fn subring_closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> ElemSet {
        let mut set = self.additive_span(std::iter::once(self.one).chain(gens));
        loop {
            let members = set.to_vec();
            let mut grown = false;
            let mut list = members.clone();
            for &x in &members {
                for &y in &members {
                    let p = self.mul(x, y);
                    if !set.contains(p) {
                        self.extend_span(&mut set, &mut list, p);
                        grown = true;
                    }
                }
            }
            if !grown {
                return set;
            }
        }
    }

    fn subring_generators(&self, members: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.subring_closure(std::iter::empty());
        for x in members.iter() {
            if current == *members {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.subring_closure(gens.iter().copied());
            }
        }
        gens
    }

    /// Exhaustive check of the commutative ring axioms. Returns a description
    /// of the first violation.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let n = self.order;
        for x in 0..n {
            if self.add(self.zero, x) != x {
                return Err(format!("0 + {x} != {x}"));
            }
            if self.mul(self.one, x) != x {
                return Err(format!("1 * {x} != {x}"));
            }
            if self.add(x, self.neg(x)) != self.zero {
                return Err(format!("{x} has no additive inverse"));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) || self.mul(x, y) != self.mul(y, x) {
                    return Err(format!("commutativity fails at ({x}, {y})"));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(format!("additive associativity fails at ({x}, {y}, {z})"));
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(format!("multiplicative associativity fails at ({x}, {y}, {z})"));
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return Err(format!("distributivity fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Factors of a ring built by [`FiniteRing::product`].
    pub fn factors(&self) -> Option<(&Arc<FiniteRing>, &Arc<FiniteRing>)> {
        match &self.shape {
            Shape::Product { left, right } => Some((left, right)),
            _ => None,
        }
    }

    /// Index of the pair `(x, y)` in a product ring.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        let (_, right) = self.factors().expect("pair() on a non-product ring");
        x * right.order() + y
    }

    pub fn unpair(&self, z: usize) -> (usize, usize) {
        let (_, right) = self.factors().expect("unpair() on a non-product ring");
        (z / right.order(), z % right.order())
    }
}

/// An element together with its ring; supports the usual operators.
#[derive(Clone, Copy)]
pub struct RingElement<'a> {
    ring: &'a FiniteRing,
    index: usize,
}

impl<'a> RingElement<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring(&self) -> &'a FiniteRing {
        self.ring
    }

    pub fn pow(self, k: usize) -> Self {
        RingElement { ring: self.ring, index: self.ring.pow(self.index, k) }
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.index)
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            std::ptr::eq(self.ring, other.ring) || self.ring == other.ring,
            "arithmetic between elements of different rings"
        );
    }
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && (std::ptr::eq(self.ring, other.ring) || self.ring == other.ring)
    }
}

impl Eq for RingElement<'_> {}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::render_element(self.ring, self.index))
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::render_element(self.ring, self.index))
    }
}

impl<'a> Add for RingElement<'a> {
    type Output = RingElement<'a>;
    fn add(self, rhs: Self) -> Self::Output {
        self.same_ring(&rhs);
        RingElement { ring: self.ring, index: self.ring.add(self.index, rhs.index) }
    }
}

impl<'a> Sub for RingElement<'a> {
    type Output = RingElement<'a>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.same_ring(&rhs);
        RingElement { ring: self.ring, index: self.ring.sub(self.index, rhs.index) }
    }
}

impl<'a> Mul for RingElement<'a> {
    type Output = RingElement<'a>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.same_ring(&rhs);
        RingElement { ring: self.ring, index: self.ring.mul(self.index, rhs.index) }
    }
}

impl<'a> Neg for RingElement<'a> {
    type Output = RingElement<'a>;
    fn neg(self) -> Self::Output {
        RingElement { ring: self.ring, index: self.ring.neg(self.index) }
    }
}

/// A unital ring homomorphism stored as an index table.
#[derive(Clone)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    map: Vec<usize>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingHom")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("map", &self.map)
            .finish()
    }
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.source == *other.source && *self.target == *other.target
    }
}

impl RingHom {
    /// Validates `images` exhaustively; reports the first offending pair.
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, images: Vec<usize>) -> Result<RingHom> {
        if images.len() != source.order() {
            return Err(Error::Precondition(format!(
                "homomorphism table has {} entries, source has order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(x) = images.iter().position(|&y| y >= target.order()) {
            return Err(Error::Precondition(format!("image of {x} is outside the target ring")));
        }
        if images[source.one()] != target.one() {
            return Err(Error::HomViolation { law: HomLaw::Unital, x: source.one(), y: source.one() });
        }
        for x in 0..source.order() {
            for y in x..source.order() {
                if images[source.add(x, y)] != target.add(images[x], images[y]) {
                    return Err(Error::HomViolation { law: HomLaw::Additive, x, y });
                }
                if images[source.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(Error::HomViolation { law: HomLaw::Multiplicative, x, y });
                }
            }
        }
        Ok(RingHom { source, target, map: images })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<usize>) -> RingHom {
        debug_assert_eq!(map.len(), source.order());
        RingHom { source, target, map }
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> RingHom {
        RingHom { source: ring.clone(), target: ring.clone(), map: (0..ring.order()).collect() }
    }

    /// `k mod n -> k * 1_B` from `Z/n`.
    pub fn reduction(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>) -> Result<RingHom> {
        let n = match source.shape() {
            Shape::Zmod { n } => *n,
            _ => return Err(Error::Semantic("reduce requires a source of the form Z/n".into())),
        };
        let images = (0..n).map(|k| target.from_int(k as u64)).collect();
        RingHom::new(source.clone(), target.clone(), images)
    }

    pub fn compose(&self, then: &RingHom) -> RingHom {
        assert!(*self.target == *then.source, "composition of incompatible homomorphisms");
        RingHom {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&x| then.map[x]).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    pub fn image_set(&self, items: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.target.order(), items.iter().map(|x| self.map[x]))
    }

    pub fn preimage_set(&self, items: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.source.order(), (0..self.source.order()).filter(|&x| items.contains(self.map[x])))
    }

    pub fn kernel(&self) -> Ideal {
        let zero = ElemSet::from_iter(self.target.order(), [self.target.zero()]);
        Ideal::from_members(self.source.clone(), self.preimage_set(&zero))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set(&ElemSet::full(self.source.order())).is_full()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Factors `self` as `source -> Im -> target`: returns the image ring,
    /// the corestricted surjection, and the embedding.
    pub fn factor_through_image(&self) -> Result<(Arc<FiniteRing>, RingHom, RingHom)> {
        let image = self.image_set(&ElemSet::full(self.source.order()));
        if image.is_full() {
            return Ok((self.target.clone(), self.clone(), RingHom::identity(&self.target)));
        }
        let (ring, embed) = FiniteRing::subring_on(&self.target, &image)?;
        let rank: Vec<usize> = {
            let mut r = vec![usize::MAX; self.target.order()];
            for (i, m) in image.iter().enumerate() {
                r[m] = i;
            }
            r
        };
        let onto = RingHom::new_unchecked(self.source.clone(), ring.clone(), self.map.iter().map(|&y| rank[y]).collect());
        Ok((ring, onto, embed))
    }
}
