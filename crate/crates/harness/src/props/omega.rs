use snabs_core::classify::{ring_class_predicates, s_variant_predicates};
use snabs_core::dsl::{render_element, render_ideal, render_multset};
use snabs_core::{extend_ideal, sat_ideal, Check, ElemSet, Ideal, IdealLattice, MultSet, Result};

use super::local::localizations;
use super::Settings;
use crate::corpus::Corpus;
use crate::engine::{check, checks, over, skip, Instance, Memo, Tally};

pub fn omega_image(c: &Corpus, st: &Settings) -> Tally {
    over(&c.homs, |h, t| {
        let src = &c.rings[h.source];
        let kernel = h.map.kernel();
        let mut memo = Memo::default();
        for set in &src.sets {
            let image_set = set.image(&h.map);
            for i in src.disjoint(set).filter(|i| kernel.is_subset(i)) {
                let image = i.image(&h.map);
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, &h.text),
                    || {
                        let (a, b) = (memo.omega_s(i, set)?, memo.omega_s(&image, &image_set)?);
                        check("equal", a == b, format!("omega(I) = {a}, omega(f(I)) = {b}"))
                    },
                );
            }
        }
    })
}

pub fn omega_preimage(c: &Corpus, st: &Settings) -> Tally {
    over(&c.homs, |h, t| {
        let src = &c.rings[h.source];
        let mut memo = Memo::default();
        for set in &src.sets {
            let image_set = set.image(&h.map);
            for j in h.image_lattice.proper().filter(|j| image_set.meets(j).is_none()) {
                let pre = j.preimage(&h.map);
                t.instance(
                    st.cap,
                    || Instance::classify(&pre, set, 1, &h.text),
                    || {
                        let (a, b) = (memo.omega_s(j, &image_set)?, memo.omega_s(&pre, set)?);
                        check("equal", a == b, format!("omega(J) = {a}, omega(f⁻¹(J)) = {b}"))
                    },
                );
            }
        }
    })
}

pub fn omega_colon(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            for i in u.disjoint(set) {
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, "omega"),
                    || {
                        let w = memo.omega_s(i, set)?;
                        let mut least = usize::MAX;
                        for s in set.iter() {
                            least = least.min(memo.omega(&i.colon(s))?);
                        }
                        check("colon", w == least, format!("omega_S(I) = {w}, least omega(I:s) = {least}"))
                    },
                );
            }
        }
    })
}

pub fn omega_localization(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for (set, loc) in localizations(u) {
            for i in u.disjoint(set) {
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, "omega"),
                    || {
                        let (loc, _) = loc.as_ref().map_err(Clone::clone)?;
                        let (a, b) = (memo.omega_s(i, set)?, memo.omega(&extend_ideal(i, loc))?);
                        check("localization", a == b, format!("omega_S(I) = {a}, omega(IR_S) = {b}"))
                    },
                );
            }
        }
    })
}

pub fn omega_saturation(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let divided = ring_class_predicates(&u.lattice).map(|class| class.locally_divided.holds);
        for (set, loc) in localizations(u) {
            for i in u.disjoint(set) {
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, "omega"),
                    || {
                        if !*divided.as_ref().map_err(Clone::clone)? {
                            return skip("R is not locally divided");
                        }
                        let (loc, _) = loc.as_ref().map_err(Clone::clone)?;
                        let (sat, _) = sat_ideal(i, set)?;
                        let (a, b) = (memo.omega(&sat)?, memo.omega(&extend_ideal(i, loc))?);
                        check("saturation", a == b, format!("omega(Sat) = {a}, omega(IR_S) = {b}"))
                    },
                );
            }
        }
    })
}

/// `I1 × I2` inside the product ring.
fn product_ideal(ring: &std::sync::Arc<snabs_core::FiniteRing>, left: &Ideal, right: &Ideal) -> Ideal {
    let members = ElemSet::from_iter(
        ring.order(),
        left.members().iter().flat_map(|x| right.members().iter().map(move |y| ring.pair(x, y))),
    );
    Ideal::from_members(ring.clone(), members)
}

pub fn omega_product(c: &Corpus, st: &Settings) -> Tally {
    over(&c.products, |p, t| {
        let ring = &c.rings[p.ring].ring;
        let mut memo = Memo::default();
        for s1 in &p.left.sets {
            for s2 in &p.right.sets {
                let set = match s1.cartesian(s2, ring) {
                    Ok(set) => set,
                    Err(e) => {
                        t.instance(st.cap, || Instance { key: c.rings[p.ring].text.clone(), replay: String::new() }, || Err(e));
                        continue;
                    }
                };
                for i1 in p.left.disjoint(s1) {
                    for i2 in p.right.disjoint(s2) {
                        let prod = product_ideal(ring, i1, i2);
                        t.instance(
                            st.cap,
                            || Instance::classify(&prod, &set, 1, &format!("I1={}, I2={}", render_ideal(i1), render_ideal(i2))),
                            || {
                                let (w1, w2) = (memo.omega_s(i1, s1)?, memo.omega_s(i2, s2)?);
                                let w = memo.omega_s(&prod, &set)?;
                                check("additive", w == w1 + w2, format!("omega(I1×I2) = {w}, {w1} + {w2}"))
                            },
                        );
                    }
                }
            }
        }
    })
}

pub fn product_absorbing(c: &Corpus, st: &Settings) -> Tally {
    over(&c.products, |p, t| {
        let ring = &c.rings[p.ring].ring;
        let mut memo = Memo::default();
        for s1 in &p.left.sets {
            for s2 in &p.right.sets {
                let Ok(set) = s1.cartesian(s2, ring) else { continue };
                for i1 in p.left.disjoint(s1) {
                    for i2 in p.right.disjoint(s2) {
                        let prod = product_ideal(ring, i1, i2);
                        for m in p.left.ns() {
                            for n in p.right.ns().filter(|n| m + n <= 5) {
                                t.instance(
                                    st.cap,
                                    || Instance::classify(&prod, &set, m + n, &format!("m={m}, n={n}")),
                                    || {
                                        if !memo.s_abs(i1, s1, m)? || !memo.s_abs(i2, s2, n)? {
                                            return skip("a factor is not absorbing at its level");
                                        }
                                        check("m+n", memo.s_abs(&prod, &set, m + n)?, "I1×I2 is not (S1×S2)-(m+n)-absorbing")
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
    })
}

pub fn exactly_n_primes(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let ring = &u.ring;
        for set in &u.sets {
            for i in u.disjoint(set) {
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, "minimal primes"),
                    || {
                        let mins = u.lattice.minimal_primes(i)?;
                        if mins.iter().any(|p| set.meets(p).is_some()) {
                            return skip("a minimal prime meets S");
                        }
                        let k = mins.len();
                        if !memo.s_abs(i, set, k)? {
                            return skip("I is not S-n-absorbing for n = number of minimal primes");
                        }
                        let product = mins.iter().skip(1).fold(mins[0].clone(), |acc, p| acc.product(p));
                        let s = set.iter().find(|&s| product.scale(s).is_subset(i.members()));
                        let w = memo.omega_s(i, set)?;
                        let detail = match s {
                            Some(s) => format!("s = {}", render_element(ring, s)),
                            None => format!("no s with s P1...P{k} ⊆ I; product {}", render_ideal(&product)),
                        };
                        checks(vec![
                            Check::new("omega", w == k, format!("{k} minimal primes, omega {w}")),
                            Check::new("product", s.is_some(), detail),
                        ])
                    },
                );
            }
        }
    })
}

pub fn saturation_invariance(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            let sat = set.saturate();
            for i in u.disjoint(set) {
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, &format!("saturation {}", render_multset(&sat))),
                        || {
                            if sat.meets(i).is_some() {
                                return check("disjoint", false, "I meets the saturation of S");
                            }
                            let (a, b) = (memo.s_abs(i, set, n)?, memo.s_abs(i, &sat, n)?);
                            check("iff", a == b, format!("S: {a}, saturation: {b}"))
                        },
                    );
                }
            }
        }
    })
}

/// Components `Q ∩ M` of the strongly S-primary decomposition of `I`, where
/// `M` is the meet of the primary components of `I` that meet `S`.
fn laskerian_components(lattice: &IdealLattice, i: &Ideal, set: &MultSet) -> Result<Vec<Ideal>> {
    let parts = lattice.primary_decomposition(i)?;
    let unit = Ideal::unit(lattice.ring());
    let m = parts.iter().filter(|q| set.meets(q).is_some()).fold(unit, |acc, q| acc.intersection(q));
    Ok(parts.iter().filter(|q| set.meets(q).is_none()).map(|q| q.intersection(&m)).collect())
}

fn laskerian_checks(lattice: &IdealLattice, i: &Ideal, set: &MultSet) -> Result<Vec<Check>> {
    let comps = laskerian_components(lattice, i, set)?;
    let meet = comps.iter().fold(Ideal::unit(lattice.ring()), |acc, q| acc.intersection(q));
    let mut strongly = true;
    for q in &comps {
        strongly &= s_variant_predicates(q, set)?.strongly_s_primary.holds;
    }
    Ok(vec![
        Check::new("laskerian-meet", !comps.is_empty() && meet == *i, format!("{} components, meet {}", comps.len(), render_ideal(&meet))),
        Check::new("strongly-s-primary", strongly, "a component is not strongly S-primary"),
    ])
}

pub fn omega_finite(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            for i in u.disjoint(set) {
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, "laskerian"),
                    || {
                        let mut list = laskerian_checks(&u.lattice, i, set)?;
                        let w = memo.omega_s(i, set);
                        list.push(Check::new("finite", w.is_ok(), format!("{w:?}")));
                        checks(list)
                    },
                );
            }
        }
    })
}

pub fn arithmetical(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let arith = ring_class_predicates(&u.lattice).map(|class| class.arithmetical.holds);
        for set in &u.sets {
            t.instance(
                st.cap,
                || Instance { key: format!("{}; S={}", u.text, render_multset(set)), replay: format!("snabs verify --prop 4.7(2) --ring '{}'", u.text) },
                || {
                    if !*arith.as_ref().map_err(Clone::clone)? {
                        return skip("R is not arithmetical");
                    }
                    let mut noetherian = true;
                    for i in u.lattice.ideals() {
                        noetherian &= Ideal::generated(&u.ring, &i.minimal_generators()) == *i;
                    }
                    let mut laskerian = true;
                    let mut finite = true;
                    for i in u.disjoint(set) {
                        laskerian &= laskerian_checks(&u.lattice, i, set)?.iter().all(|c| c.passed);
                        finite &= memo.omega_s(i, set).is_ok();
                    }
                    checks(vec![
                        Check::new("s-noetherian", noetherian, "an ideal is not regenerated by its minimal generators"),
                        Check::new("strongly-s-laskerian", laskerian, "an ideal has no strongly S-primary decomposition"),
                        Check::new("omega-finite", finite, "an ideal has no finite omega"),
                    ])
                },
            );
        }
    })
}
