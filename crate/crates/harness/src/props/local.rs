use snabs_core::classify::{ring_class_predicates, s_variant_predicates};
use snabs_core::dsl::render_ideal;
use snabs_core::{extend_ideal, localize, sat_ideal, Check, IdealLattice, Localization, MultSet, Result};

use super::Settings;
use crate::corpus::{Corpus, RingUnit};
use crate::engine::{check, checks, over, skip, Instance, Memo, Tally};

/// Each set of the family with its localization and the localized lattice.
pub(super) fn localizations(u: &RingUnit) -> Vec<(&MultSet, Result<(Localization, IdealLattice)>)> {
    u.sets
        .iter()
        .map(|set| {
            let loc = localize(&u.ring, set).and_then(|loc| {
                let lattice = IdealLattice::new(&loc.ring)?;
                Ok((loc, lattice))
            });
            (set, loc)
        })
        .collect()
}

pub fn localization_extension(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for (set, loc) in localizations(u) {
            for i in u.disjoint(set) {
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, ""),
                        || {
                            let (loc, _) = loc.as_ref().map_err(Clone::clone)?;
                            if !memo.s_abs(i, set, n)? {
                                return skip("I is not S-n-absorbing");
                            }
                            check("extension", memo.abs(&extend_ideal(i, loc), n)?, "IR_S is not n-absorbing")
                        },
                    );
                }
            }
        }
    })
}

pub fn saturation_colon(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        for (set, loc) in localizations(u) {
            for i in u.disjoint(set) {
                t.instance(
                    st.cap,
                    || Instance::classify(i, set, 1, "saturation"),
                    || {
                        let (loc, local_lattice) = loc.as_ref().map_err(Clone::clone)?;
                        let (sat, t) = sat_ideal(i, set)?;
                        let extended = extend_ideal(i, loc);
                        let mut list = vec![
                            Check::new("colon", sat == i.colon(t), format!("Sat = {}, I:t = {}", render_ideal(&sat), render_ideal(&i.colon(t)))),
                            Check::new("contraction", extended.preimage(&loc.map) == sat, "IR_S does not contract to Sat"),
                        ];
                        let parts = u.lattice.primary_decomposition(&sat)?;
                        let mut meet = snabs_core::Ideal::unit(&u.ring);
                        let mut components_ok = true;
                        for q in &parts {
                            meet = meet.intersection(q);
                            components_ok &= q.is_primary() && set.meets(q).is_none() && s_variant_predicates(q, set)?.s_primary.holds;
                        }
                        list.push(Check::new("sat-decomposition", components_ok && meet == sat, "Sat has no S-primary decomposition"));
                        let local_parts = local_lattice.primary_decomposition(&extended)?;
                        let mut local_meet = snabs_core::Ideal::unit(&loc.ring);
                        for q in &local_parts {
                            local_meet = local_meet.intersection(q);
                        }
                        let local_ok = local_parts.iter().all(|q| q.is_primary()) && local_meet == extended;
                        list.push(Check::new("local-decomposition", local_ok, "IR_S has no primary decomposition"));
                        checks(list)
                    },
                );
            }
        }
    })
}

pub fn laskerian_equivalence(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        for (set, loc) in localizations(u) {
            for i in u.disjoint(set) {
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, ""),
                        || {
                            let (loc, _) = loc.as_ref().map_err(Clone::clone)?;
                            let (a, b) = (memo.s_abs(i, set, n)?, memo.abs(&extend_ideal(i, loc), n)?);
                            check("iff", a == b, format!("I: {a}, IR_S: {b}"))
                        },
                    );
                }
            }
        }
    })
}

pub fn locally_divided(c: &Corpus, st: &Settings) -> Tally {
    over(&c.rings, |u, t| {
        let mut memo = Memo::default();
        let divided = ring_class_predicates(&u.lattice).map(|class| class.locally_divided.holds);
        for (set, loc) in localizations(u) {
            for i in u.disjoint(set) {
                for n in u.ns() {
                    t.instance(
                        st.cap,
                        || Instance::classify(i, set, n, ""),
                        || {
                            let (loc, _) = loc.as_ref().map_err(Clone::clone)?;
                            let divided = divided.as_ref().map_err(Clone::clone)?;
                            let (sat, _) = sat_ideal(i, set)?;
                            let sat_is_colon = set.iter().any(|s| i.colon(s) == sat);
                            let local = memo.abs(&extend_ideal(i, loc), n)?;
                            let absorbing = memo.s_abs(i, set, n)?;
                            let mut list = Vec::new();
                            if absorbing {
                                list.push(Check::new("forward", local && sat_is_colon, format!("IR_S n-absorbing: {local}, Sat = I:s: {sat_is_colon}")));
                            }
                            if *divided && local && sat_is_colon {
                                list.push(Check::new("converse", absorbing, "locally divided, IR_S n-absorbing, but I is not S-n-absorbing"));
                            }
                            checks(list)
                        },
                    );
                }
            }
        }
    })
}
