use snabs_core::amalgam::{disjointness_lemma_check, local_ring_lemma_check, verify_local_amalgam, verify_transfer};
use snabs_core::classify::is_s_n_absorbing_with;
use snabs_core::classify::WitnessMode;
use snabs_core::dsl::{render_element, render_ideal, render_multset};
use snabs_core::{Check, Ideal, MultSet};

use super::{summarize_notes, Settings};
use crate::corpus::{n_max, AmalgUnit, Corpus};
use crate::engine::{check, checks, over, skip, Instance, Memo, Tally};

fn key(c: &Corpus, id: &str, au: &AmalgUnit, set: &MultSet, extra: String) -> Instance {
    let text = &c.rings[au.ring].text;
    Instance {
        key: format!("{text}; S={}; {extra}", render_multset(set)),
        replay: format!("snabs verify --prop {id} --ring '{text}'"),
    }
}

/// Levels checked on an amalgamation: bounded by both `A` and the
/// amalgamated ring.
fn levels(au: &AmalgUnit) -> std::ops::RangeInclusive<usize> {
    1..=n_max(au.amal.ring.order()).min(n_max(au.amal.a.order()))
}

fn transfer(c: &Corpus, st: &Settings, clause: &'static str) -> Tally {
    over(&c.amalgams, |au, t| {
        let amal = &au.amal;
        let zero_a = Ideal::zero(&amal.a);
        let zero_k = Ideal::zero(&amal.fj);
        for set in &au.a_sets {
            let fs = amal.image_mult_set(set);
            let is: Vec<&Ideal> = match clause {
                "2" => vec![&zero_a],
                _ => au.a_lattice.proper().filter(|i| set.meets(i).is_none()).collect(),
            };
            let ks: Vec<&Ideal> = match clause {
                "1" => vec![&zero_k],
                _ => au.fj_lattice.proper().filter(|k| fs.meets(k).is_none()).collect(),
            };
            let pairs: Vec<(usize, usize)> = match clause {
                "3" => levels(au).flat_map(|m| (1..=2).map(move |n| (m, n))).filter(|&(m, n)| m <= 2 && m + n <= 4).collect(),
                _ => levels(au).map(|n| (n, n)).collect(),
            };
            for i in &is {
                for k in &ks {
                    for &(m, n) in &pairs {
                        t.instance(
                            st.cap,
                            || key(c, &format!("5.2({clause})"), au, set, format!("I={}; K={}; m={m}; n={n}", render_ideal(i), render_ideal(k))),
                            || {
                                let list: Vec<Check> =
                                    verify_transfer(amal, i, k, set, m, n)?.into_iter().filter(|x| x.clause == clause).collect();
                                if list.is_empty() {
                                    return skip("I is not S-m-absorbing or K is not f(S)-n-absorbing");
                                }
                                checks(list)
                            },
                        );
                    }
                }
            }
        }
    })
}

pub fn disjointness(c: &Corpus, st: &Settings) -> Tally {
    over(&c.amalgams, |au, t| {
        for set in &au.a_sets {
            for i in au.a_lattice.ideals() {
                for k in au.fj_lattice.ideals() {
                    t.instance(
                        st.cap,
                        || key(c, "5.1", au, set, format!("I={}; K={}", render_ideal(i), render_ideal(k))),
                        || checks(disjointness_lemma_check(&au.amal, i, k, set)?),
                    );
                }
            }
        }
    })
}

pub fn transfer_bowtie(c: &Corpus, st: &Settings) -> Tally {
    transfer(c, st, "1")
}

pub fn transfer_kbar(c: &Corpus, st: &Settings) -> Tally {
    transfer(c, st, "2")
}

pub fn transfer_ixk(c: &Corpus, st: &Settings) -> Tally {
    transfer(c, st, "3")
}

pub fn correspondence(c: &Corpus, st: &Settings) -> Tally {
    over(&c.amalgams, |au, t| {
        let amal = &au.amal;
        let unit = &c.rings[au.ring];
        let mut memo = Memo::default();
        let kernels = amal.zero_times_j().and_then(|z1| Ok((z1, amal.finv_j_times_zero()?)));
        for set in &au.a_sets {
            let lifted = amal.lift_mult_set(set);
            let fs = amal.image_mult_set(set);
            for l in unit.lattice.proper().filter(|l| lifted.meets(l).is_none()) {
                for n in levels(au) {
                    t.instance(
                        st.cap,
                        || Instance::classify(l, &lifted, n, ""),
                        || {
                            let (z1, z2) = kernels.as_ref().map_err(Clone::clone)?;
                            if !memo.s_abs(l, &lifted, n)? {
                                return skip("L is not S-n-absorbing");
                            }
                            let mut list = Vec::new();
                            if z1.is_subset(l) {
                                let i = l.image(&amal.pi1);
                                list.push(Check::new("from-A", amal.bowtie_j(&i)? == *l, format!("L ≠ I⋈J for I = {}", render_ideal(&i))));
                                list.push(Check::new("A-absorbing", memo.s_abs(&i, set, n)?, "pi1(L) is not S-n-absorbing"));
                            }
                            if z2.is_subset(l) {
                                let k = l.image(&amal.pi2);
                                list.push(Check::new("from-f(A)+J", amal.k_bar(&k)? == *l, format!("L ≠ K̄ for K = {}", render_ideal(&k))));
                                list.push(Check::new("f(A)+J-absorbing", memo.s_abs(&k, &fs, n)?, "pi2(L) is not f(S)-n-absorbing"));
                            }
                            if list.is_empty() {
                                return skip("L contains neither kernel");
                            }
                            checks(list)
                        },
                    );
                }
            }
        }
    })
}

pub fn primary_sufficiency(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for set in &u.sets {
            for i in u.disjoint(set).filter(|i| i.is_primary()) {
                let p = i.radical();
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, &format!("P={}", render_ideal(&p))),
                        || {
                            let pn = p.power(n);
                            let Some(s) = set.iter().find(|&s| pn.scale(s).is_subset(i.members())) else {
                                return skip("no s with s P^n ⊆ I");
                            };
                            check("absorbing", memo.s_abs(i, set, n)?, format!("s = {} gives s P^n ⊆ I", render_element(&u.ring, s)))
                        },
                    );
                }
            }
        }
    })
}

pub fn radical_power(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
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
                            let rn = rad.power(n);
                            let bad = v.witnesses.iter().find(|&&s| !rn.scale(s).is_subset(i.members()));
                            let detail = bad.map(|&s| format!("s = {}", render_element(&u.ring, s))).unwrap_or_default();
                            check("power", bad.is_none(), detail)
                        },
                    );
                }
            }
        }
    })
}

pub fn local_radical(c: &Corpus, st: &Settings) -> Tally {
    over(&c.amalgams, |au, t| {
        for i in au.a_lattice.proper() {
            for h in au.fj_lattice.ideals() {
                t.instance(
                    st.cap,
                    || Instance {
                        key: format!("{}; I={}; H={}", c.rings[au.ring].text, render_ideal(i), render_ideal(h)),
                        replay: format!("snabs verify --prop 5.8 --ring '{}'", c.rings[au.ring].text),
                    },
                    || checks(local_ring_lemma_check(&au.amal, i, h)?),
                );
            }
        }
    })
}

pub fn local_amalgam(c: &Corpus, st: &Settings) -> Tally {
    const EXAMPLE: &str = "not transferred:";
    let mut tally = over(&c.amalgams, |au, t| {
        let amal = &au.amal;
        let mut memo = Memo::default();
        for set in &au.a_sets {
            let lifted = amal.lift_mult_set(set);
            for i in au.a_lattice.proper().filter(|i| set.meets(i).is_none()) {
                for h in au.fj_lattice.ideals() {
                    let Ok(ih) = amal.bowtie_h(i, h) else { continue };
                    for n in levels(au) {
                        for s in set.iter() {
                            t.instance(
                                st.cap,
                                || key(c, "5.9", au, set, format!("I={}; H={}; s={}; n={n}", render_ideal(i), render_ideal(h), render_element(&amal.a, s))),
                                || checks(verify_local_amalgam(amal, i, h, set, s, n)?),
                            );
                        }
                        // without the local hypotheses the transfer can fail
                        if lifted.meets(&ih).is_none() && matches!(memo.s_abs(i, set, n), Ok(true)) && matches!(memo.s_abs(&ih, &lifted, n), Ok(false)) {
                            t.note(format!(
                                "{EXAMPLE} {} with S={}, I={}, H={}, n={n}: I is S-n-absorbing, I⋈H is not",
                                c.rings[au.ring].text,
                                render_multset(set),
                                render_ideal(i),
                                render_ideal(h),
                            ));
                        }
                    }
                }
            }
        }
    });
    summarize_notes(&mut tally, EXAMPLE, |k| match k {
        0 => "no instance found where I is S-n-absorbing but I⋈H is not".to_string(),
        k => format!("{k} instances where I is S-n-absorbing but I⋈H is not"),
    });
    tally
}
