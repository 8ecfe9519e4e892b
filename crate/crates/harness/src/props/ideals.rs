use snabs_core::classify::{
    colon_stabilization_check, colon_witness, is_s_n_absorbing, is_s_n_absorbing_relaxed, is_s_n_absorbing_with,
    minimal_s_n_absorbing_over, WitnessMode,
};
use snabs_core::dsl::{render_element, render_ideal, render_multset};
use snabs_core::{Check, FiniteRing, Ideal, MultSet};

use super::{summarize_notes, Settings};
use crate::corpus::{n_max, Corpus, RingUnit};
use crate::engine::{check, checks, over, skip, Instance, Memo, Tally};

fn el(ring: &FiniteRing, x: usize) -> String {
    render_element(ring, x)
}

/// Ordered `(set, ideal)` pairs with the ideal proper and disjoint from the set.
fn disjoint_pairs(u: &RingUnit) -> Vec<(&MultSet, &Ideal)> {
    u.sets.iter().flat_map(|s| u.disjoint(s).map(move |i| (s, i))).collect()
}

pub fn ideal_product(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            for i in u.disjoint(set) {
                for j in u.lattice.ideals().iter().filter(|j| set.meets(j).is_some()) {
                    let ij = i.product(j);
                    for n in u.ns() {
                        t.instance(
                            st.cap,
                            || Instance::classify(&ij, set, n, &format!("from I={}, J={}", render_ideal(i), render_ideal(j))),
                            || {
                                if !memo.s_abs(i, set, n)? {
                                    return skip("I is not S-n-absorbing");
                                }
                                check("IJ", memo.s_abs(&ij, set, n)?, "IJ is not S-n-absorbing")
                            },
                        );
                    }
                }
            }
        }
    })
}

pub fn extension_contraction(c: &Corpus, st: &Settings) -> Tally {
    over(&c.extensions, |e, t| {
        let small = &c.rings[e.small];
        let mut memo = Memo::default();
        let top = small.n_max.min(n_max(e.big.order()));
        for set in &small.sets {
            let image = set.image(&e.inclusion);
            for j in e.big_lattice.proper().filter(|j| image.meets(j).is_none()) {
                let contraction = j.preimage(&e.inclusion);
                for n in 1..=top {
                    t.instance(
                        st.cap,
                        || Instance::classify(&contraction, set, n, &format!("{}; J={}", e.text, render_ideal(j))),
                        || {
                            if !memo.s_abs(j, &image, n)? {
                                return skip("J is not S-n-absorbing in T");
                            }
                            check("J∩R", memo.s_abs(&contraction, set, n)?, "J ∩ R is not S-n-absorbing")
                        },
                    );
                }
            }
        }
    })
}

pub fn mixed_intersection(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let pairs = disjoint_pairs(u);
        for a in 0..pairs.len() {
            for b in a..pairs.len() {
                let ((s1, i1), (s2, i2)) = (pairs[a], pairs[b]);
                let product = s1.product_set(s2);
                let meet = i1.intersection(i2);
                t.instance(
                    st.cap,
                    || {
                        let extra = format!("S1={}, I1={}, S2={}, I2={}", render_multset(s1), render_ideal(i1), render_multset(s2), render_ideal(i2));
                        Instance::classify(&meet, &product, 1, &extra)
                    },
                    || {
                        if product.meets(&meet).is_some() {
                            return skip("S1S2 meets I1 ∩ I2, so the conclusion is undefined");
                        }
                        let (w1, w2) = (memo.omega_s(i1, s1)?, memo.omega_s(i2, s2)?);
                        let w = memo.omega_s(&meet, &product)?;
                        check("n1+n2", w <= w1 + w2, format!("omega(I1∩I2) = {w} > {w1} + {w2}"))
                    },
                );
            }
        }
    })
}

pub fn intersection(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            let ideals: Vec<&Ideal> = u.disjoint(set).collect();
            for a in 0..ideals.len() {
                for b in a..ideals.len() {
                    let (i1, i2) = (ideals[a], ideals[b]);
                    let meet = i1.intersection(i2);
                    t.instance(
                        st.cap,
                        || Instance::classify(&meet, set, 1, &format!("I1={}, I2={}", render_ideal(i1), render_ideal(i2))),
                        || {
                            let (w1, w2) = (memo.omega_s(i1, set)?, memo.omega_s(i2, set)?);
                            let w = memo.omega_s(&meet, set)?;
                            check("n1+n2", w <= w1 + w2, format!("omega(I1∩I2) = {w} > {w1} + {w2}"))
                        },
                    );
                }
            }
        }
    })
}

pub fn radical(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let ring = &u.ring;
        for set in &u.sets {
            for i in u.disjoint(set) {
                let rad = i.radical();
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, ""),
                        || {
                            let v = is_s_n_absorbing_with(i, set, n, WitnessMode::All)?;
                            if !v.holds {
                                return skip("I is not S-n-absorbing");
                            }
                            let rad_ok = memo.s_abs(&rad, set, n)?;
                            let bad = v.witnesses.iter().find_map(|&s| {
                                rad.members().iter().find(|&a| !i.contains(ring.mul(s, ring.pow(a, n)))).map(|a| (s, a))
                            });
                            let detail = match bad {
                                Some((s, a)) => format!("s = {}, a = {}: s a^n outside I", el(ring, s), el(ring, a)),
                                None => String::new(),
                            };
                            checks(vec![
                                Check::new("radical", rad_ok, "sqrt(I) is not S-n-absorbing"),
                                Check::new("power", bad.is_none(), detail),
                            ])
                        },
                    );
                }
            }
        }
    })
}

pub fn comaximal_product(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            let mut primes = Vec::new();
            for p in u.disjoint(set) {
                match memo.s_abs(p, set, 1) {
                    Ok(true) => primes.push(p),
                    Ok(false) => {}
                    Err(_) => {}
                }
            }
            // subsets of at most four S-primes, by bitmask
            let limit = primes.len().min(12);
            for mask in 1u32..(1 << limit) {
                let chosen: Vec<&Ideal> = (0..limit).filter(|b| mask & (1 << b) != 0).map(|b| primes[b]).collect();
                if chosen.len() > 4 {
                    continue;
                }
                let comaximal = chosen
                    .iter()
                    .enumerate()
                    .all(|(x, p)| chosen.iter().skip(x + 1).all(|q| p.sum(q).is_unit_ideal()));
                if !comaximal {
                    continue;
                }
                let k = chosen.len();
                let product = chosen.iter().skip(1).fold(chosen[0].clone(), |acc, p| acc.product(p));
                t.instance(
                    st.cap,
                    || {
                        let names: Vec<String> = chosen.iter().map(|p| render_ideal(p)).collect();
                        Instance::classify(&product, set, k, &format!("primes {}", names.join(" ")))
                    },
                    || check("product", memo.s_abs(&product, set, k)?, format!("product of {k} S-primes is not S-{k}-absorbing")),
                );
            }
        }
    })
}

pub fn hom_image(c: &Corpus, st: &Settings) -> Tally {
    over(&c.homs, |h, t| {
        let src = &c.rings[h.source];
        let kernel = h.map.kernel();
        let mut memo = Memo::default();
        for set in &src.sets {
            let image_set = set.image(&h.map);
            for i in src.disjoint(set).filter(|i| kernel.is_subset(i)) {
                let image = i.image(&h.map);
                for n in src.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, &h.text),
                        || {
                            let (a, b) = (memo.s_abs(i, set, n)?, memo.s_abs(&image, &image_set, n)?);
                            check("iff", a == b, format!("I: {a}, f(I): {b}"))
                        },
                    );
                }
            }
        }
    })
}

pub fn hom_preimage(c: &Corpus, st: &Settings) -> Tally {
    over(&c.homs, |h, t| {
        let src = &c.rings[h.source];
        let mut memo = Memo::default();
        for set in &src.sets {
            let image_set = set.image(&h.map);
            for j in h.image_lattice.proper().filter(|j| image_set.meets(j).is_none()) {
                let pre = j.preimage(&h.map);
                for n in src.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(&pre, set, n, &h.text),
                        || {
                            let (a, b) = (memo.s_abs(j, &image_set, n)?, memo.s_abs(&pre, set, n)?);
                            check("iff", a == b, format!("J: {a}, f⁻¹(J): {b}"))
                        },
                    );
                }
            }
        }
    })
}

pub fn hom_correspondence(c: &Corpus, st: &Settings) -> Tally {
    over(&c.homs, |h, t| {
        let src = &c.rings[h.source];
        let kernel = h.map.kernel();
        let mut memo = Memo::default();
        for set in &src.sets {
            let image_set = set.image(&h.map);
            for n in src.ns() {
                t.instance(
                    st.cap,
                    || Instance { key: format!("{}; S={}; n={n}", h.text, render_multset(set)), replay: format!("snabs verify --prop 2.6 --ring '{}'", src.text) },
                    || {
                        let mut below = Vec::new();
                        for i in src.disjoint(set).filter(|i| kernel.is_subset(i)) {
                            if memo.s_abs(i, set, n)? {
                                below.push(i);
                            }
                        }
                        let mut above = Vec::new();
                        for j in h.image_lattice.proper().filter(|j| image_set.meets(j).is_none()) {
                            if memo.s_abs(j, &image_set, n)? {
                                above.push(j.clone());
                            }
                        }
                        let images: Vec<Ideal> = below.iter().map(|i| i.image(&h.map)).collect();
                        let onto = above.iter().all(|j| images.contains(j)) && images.iter().all(|j| above.contains(j));
                        let injective = images.iter().enumerate().all(|(x, a)| images.iter().skip(x + 1).all(|b| a != b));
                        let ordered = (0..below.len()).all(|x| {
                            (0..below.len()).all(|y| below[x].is_subset(below[y]) == images[x].is_subset(&images[y]))
                        });
                        checks(vec![
                            Check::new("bijective", onto && injective, format!("{} ideals below, {} above", below.len(), above.len())),
                            Check::new("order", ordered, "inclusion is not preserved"),
                        ])
                    },
                );
            }
        }
    })
}

pub fn quotient(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for k in u.lattice.proper().filter(|k| !k.is_zero()) {
            let (_, map) = match FiniteRing::quotient(k) {
                Ok(x) => x,
                Err(e) => {
                    t.instance(st.cap, || Instance { key: u.text.clone(), replay: String::new() }, || Err(e));
                    continue;
                }
            };
            for set in &u.sets {
                let image_set = set.image(&map);
                for j in u.disjoint(set).filter(|j| k.is_subset(j)) {
                    let jq = j.image(&map);
                    for n in u.ns() {
                        t.instance(
                            st.cap,
                            || Instance::classify(j, set, n, &format!("I={}", render_ideal(k))),
                            || {
                                let (a, b) = (memo.s_abs(j, set, n)?, memo.s_abs(&jq, &image_set, n)?);
                                check("iff", a == b, format!("J: {a}, J/I: {b}"))
                            },
                        );
                    }
                }
            }
        }
    })
}

pub fn colon_stabilization(c: &Corpus, st: &Settings) -> Tally {
    const GENERAL: &str = "general n:";
    let mut tally = over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let ring = &u.ring;
        for set in &u.sets {
            for i in u.disjoint(set) {
                let w = match memo.omega_s(i, set) {
                    Ok(w) => w,
                    Err(e) => {
                        t.instance(st.cap, || Instance::classify(i, set, 1, "omega"), || Err(e));
                        continue;
                    }
                };
                let witnesses = match is_s_n_absorbing_with(i, set, w, WitnessMode::All) {
                    Ok(v) => v.witnesses,
                    Err(e) => {
                        t.instance(st.cap, || Instance::classify(i, set, w, "witnesses"), || Err(e));
                        continue;
                    }
                };
                for &s in &witnesses {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, w, &format!("s={}", el(ring, s))),
                        || {
                            let v = colon_stabilization_check(i, set, s, w)?;
                            let k = v.counterexample.as_ref().and_then(|c| c.first().copied()).unwrap_or(0);
                            check("stable", v.holds, format!("I:s^{w} ≠ I:s^{k}"))
                        },
                    );
                }
                // the statement for n above omega is probed, not asserted
                for n in w + 1..=u.n_max {
                    let Ok(v) = is_s_n_absorbing_with(i, set, n, WitnessMode::All) else { continue };
                    for &s in &v.witnesses {
                        if let Ok(r) = colon_stabilization_check(i, set, s, n) {
                            if !r.holds {
                                let k = r.counterexample.as_ref().and_then(|c| c.first().copied()).unwrap_or(0);
                                t.note(format!(
                                    "{GENERAL} {} with S={}, I={}, s={}, n={n} (omega {w}): I:s^{n} = {} but I:s^{k} = {}",
                                    u.text,
                                    render_multset(set),
                                    render_ideal(i),
                                    el(ring, s),
                                    render_ideal(&i.colon(ring.pow(s, n))),
                                    render_ideal(&i.colon(ring.pow(s, k))),
                                ));
                            }
                        }
                    }
                }
            }
        }
    });
    summarize_notes(&mut tally, GENERAL, |k| {
        if k == 0 {
            "above omega the stabilization also held on every probed witness".to_string()
        } else {
            format!("above omega the stabilization fails for {k} (ring, S, I, s, n) witnesses; the assertion is made at n = omega only")
        }
    });
    tally
}

pub fn colon_characterization(c: &Corpus, st: &Settings) -> Tally {
    let mut tally = over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            for i in u.disjoint(set) {
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, ""),
                        || {
                            let def = memo.s_abs(i, set, n)?;
                            let colon = colon_witness(i, set, n)?;
                            let relaxed = is_s_n_absorbing_relaxed(i, set, n)?.holds;
                            checks(vec![
                                Check::new("colon", def == colon.is_some(), format!("definition {def}, colon witness {colon:?}")),
                                Check::new("quantifier-order", def == relaxed, format!("uniform {def}, per-tuple {relaxed}")),
                            ])
                        },
                    );
                }
            }
        }
    });
    let executed = tally.passed + tally.failed;
    let differ = tally.failures.iter().filter(|f| f.clause == "quantifier-order").count();
    tally.note(if tally.failed == 0 {
        format!("quantifier order: the uniform (one s for all tuples) and per-tuple (s chosen per tuple) predicates agree on all {executed} executed instances")
    } else {
        format!("quantifier order: predicates differ on at least {differ} sampled instances")
    });
    tally
}

pub fn minimal_prime_bound(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for (set, i) in disjoint_pairs(u) {
            t.instance(
                st.cap,
                || Instance::classify(i, set, 1, "omega"),
                || {
                    let w = memo.omega_s(i, set)?;
                    let count = u.lattice.minimal_primes(i)?.iter().filter(|p| set.meets(p).is_none()).count();
                    check("bound", count <= w, format!("{count} minimal primes disjoint from S, omega {w}"))
                },
            );
        }
    })
}

pub fn chain_intersection(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let ring = &u.ring;
        for set in &u.sets {
            if !set.is_strongly_multiplicative().holds {
                t.instance(st.cap, || Instance { key: u.text.clone(), replay: String::new() }, || skip("S is not strongly multiplicative"));
                continue;
            }
            for n in u.ns() {
                let mut members = Vec::new();
                for i in u.disjoint(set) {
                    if let Ok(true) = memo.s_abs(i, set, n) {
                        members.push(i);
                    }
                }
                for a in &members {
                    for b in members.iter().filter(|b| a.is_subset(b) && a != *b) {
                        let meet = a.intersection(b);
                        t.instance(
                            st.cap,
                            || Instance::classify(&meet, set, n, &format!("chain {} ⊂ {}", render_ideal(a), render_ideal(b))),
                            || {
                                let wa = is_s_n_absorbing(a, set, n)?.witness_s.expect("holding verdicts carry a witness");
                                let wb = is_s_n_absorbing(b, set, n)?.witness_s.expect("holding verdicts carry a witness");
                                let common = ring.mul(wa, wb);
                                checks(vec![
                                    Check::new("meet", memo.s_abs(&meet, set, n)?, "meet is not S-n-absorbing"),
                                    Check::new(
                                        "common-witness",
                                        snabs_core::classify::check_witness(&meet, common, n)?.holds,
                                        format!("common multiple {} is not a witness", el(ring, common)),
                                    ),
                                ])
                            },
                        );
                    }
                }
            }
        }
    })
}

pub fn minimal_existence(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for (set, j) in disjoint_pairs(u) {
            for n in u.ns() {
                t.instance(
                    st.cap,
                    || Instance::classify(j, set, n, "minimal over J"),
                    || {
                        if !set.is_strongly_multiplicative().holds {
                            return skip("S is not strongly multiplicative");
                        }
                        let mins = minimal_s_n_absorbing_over(&u.lattice, j, set, n)?;
                        let mut valid = true;
                        for m in &mins {
                            valid &= j.is_subset(m) && set.meets(m).is_none() && memo.s_abs(m, set, n)?;
                            for k in u.disjoint(set).filter(|k| j.is_subset(k) && k.is_subset(m) && *k != m) {
                                valid &= !memo.s_abs(k, set, n)?;
                            }
                        }
                        checks(vec![
                            Check::new("exists", !mins.is_empty(), "no S-n-absorbing ideal over J"),
                            Check::new("minimal", valid, "a returned ideal is not minimal S-n-absorbing over J"),
                        ])
                    },
                );
            }
        }
    })
}
