//! Fixed instances with hand-checked answers.

use std::sync::Arc;

use snabs_core::amalgam::{amalgamate, disjointness_lemma_check, local_ring_lemma_check, verify_local_amalgam, verify_transfer};
use snabs_core::classify::{
    check_witness, colon_stabilization_check, is_n_absorbing, is_s_n_absorbing, is_s_n_absorbing_with,
    minimal_s_n_absorbing_over, omega, omega_table, replay_counterexample, ring_class_predicates,
    s_variant_predicates, WitnessMode,
};
use snabs_core::dsl::{parse_element, parse_hom, parse_ideal, parse_mult, parse_ring, render_ideal, render_multset, render_ring};
use snabs_core::{all_ideals, extend_ideal, localize, sat_ideal, Error, FiniteRing, Ideal, IdealLattice, MultSet, RingHom};

fn ring(text: &str) -> Arc<FiniteRing> {
    parse_ring(text).unwrap()
}

fn ideal(r: &Arc<FiniteRing>, text: &str) -> Ideal {
    parse_ideal(text, r).unwrap()
}

fn mult(r: &Arc<FiniteRing>, text: &str) -> MultSet {
    parse_mult(text, r).unwrap()
}

fn elem(r: &FiniteRing, text: &str) -> usize {
    parse_element(text, r).unwrap()
}

fn members(i: &Ideal) -> Vec<usize> {
    i.members().to_vec()
}

#[test]
fn zmod_units_and_nilpotents() {
    let z12 = ring("Z/12");
    assert_eq!(z12.order(), 12);
    assert_eq!(z12.units().to_vec(), vec![1, 5, 7, 11]);
    let z2 = ring("Z/2");
    assert_eq!(z2.units().to_vec(), vec![1]);
    let z8 = ring("Z/8");
    assert_eq!(z8.nilpotents().to_vec(), vec![0, 2, 4, 6]);
    assert_eq!(z8.jacobson_nilpotency(), 3);
    assert!(matches!(FiniteRing::zmod(1), Err(Error::InvalidOrder(1))));
    assert!(matches!(FiniteRing::zmod(0), Err(Error::InvalidOrder(0))));
}

#[test]
fn products() {
    let p = ring("product(Z/4, Z/9)");
    assert_eq!(p.order(), 36);
    assert_eq!(p.units().len(), 12);
    let p = ring("product(Z/2, Z/2)");
    assert_eq!(p.units().to_vec(), vec![p.pair(1, 1)]);
    assert!(matches!(parse_ring("product(Z/20, Z/20)"), Err(Error::Capacity { order: 400, .. })));
}

#[test]
fn polynomial_quotients() {
    let f4 = ring("Z/2[x]/(x^2 + x + 1)");
    assert_eq!(f4.order(), 4);
    assert!(f4.is_field());
    let r = ring("Z/2[x]/(x^3)");
    assert_eq!(r.order(), 8);
    let x = elem(&r, "x");
    assert_ne!(r.pow(x, 2), r.zero());
    assert_eq!(r.pow(x, 3), r.zero());
    let r = ring("Z/6[x]/(x^2)");
    assert_eq!(r.order(), 36);
    let e = elem(&r, "2*x + 3");
    assert_eq!(r.mul(e, e), elem(&r, "3"));
    assert!(matches!(parse_ring("Z/6[x]/(2*x^2)"), Err(Error::UnsupportedModulus(_))));
}

#[test]
fn quotients() {
    let z12 = ring("Z/12");
    let (q, map) = FiniteRing::quotient(&ideal(&z12, "ideal(3)")).unwrap();
    assert_eq!(q.order(), 3);
    assert_eq!(map.apply(4), 1);
    let (same, map) = FiniteRing::quotient(&Ideal::zero(&z12)).unwrap();
    assert_eq!(*same, *z12);
    assert!(map.is_bijective());
    let r = ring("Z/2[x]/(x^3)");
    let (q, _) = FiniteRing::quotient(&ideal(&r, "ideal(x)")).unwrap();
    assert_eq!(q.order(), 2);
    assert!(q.is_field());
    assert!(matches!(FiniteRing::quotient(&Ideal::unit(&z12)), Err(Error::DegenerateQuotient)));
}

#[test]
fn homomorphisms() {
    let z4 = ring("Z/4");
    let z2 = ring("Z/2");
    assert!(RingHom::new(z4.clone(), z4.clone(), vec![0, 1, 2, 3]).is_ok());
    assert!(RingHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
    assert!(matches!(RingHom::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]), Err(Error::HomViolation { .. })));
    assert!(parse_hom("reduce(Z/2)", &z4).is_ok());
    assert!(parse_hom("reduce(Z/3)", &z4).is_err());
}

#[test]
fn ideal_generation_and_lattice() {
    let z12 = ring("Z/12");
    assert_eq!(members(&ideal(&z12, "ideal(6)")), vec![0, 6]);
    assert_eq!(members(&ideal(&z12, "ideal()")), vec![0]);
    assert_eq!(members(&ideal(&z12, "ideal(4, 6)")), vec![0, 2, 4, 6, 8, 10]);
    let rendered: Vec<String> = all_ideals(&z12).unwrap().iter().map(render_ideal).collect();
    assert_eq!(rendered, ["ideal()", "ideal(6)", "ideal(4)", "ideal(3)", "ideal(2)", "ideal(1)"]);
    assert_eq!(all_ideals(&ring("Z/2[x]/(x^2 + x + 1)")).unwrap().len(), 2);
    let rendered: Vec<String> = all_ideals(&ring("Z/2[x]/(x^3)")).unwrap().iter().map(render_ideal).collect();
    assert_eq!(rendered, ["ideal()", "ideal(x^2)", "ideal(x)", "ideal(1)"]);
}

#[test]
fn colon_radical_combine() {
    let z12 = ring("Z/12");
    assert_eq!(ideal(&z12, "ideal(6)").colon(2), ideal(&z12, "ideal(3)"));
    assert_eq!(ideal(&z12, "ideal(6)").colon(1), ideal(&z12, "ideal(6)"));
    assert_eq!(Ideal::zero(&z12).colon(4), ideal(&z12, "ideal(3)"));
    assert_eq!(Ideal::zero(&z12).radical(), ideal(&z12, "ideal(6)"));
    let r = ring("Z/2[x]/(x^3)");
    assert_eq!(ideal(&r, "ideal(x^2)").radical(), ideal(&r, "ideal(x)"));
    let (i2, i3) = (ideal(&z12, "ideal(2)"), ideal(&z12, "ideal(3)"));
    assert_eq!(i2.intersection(&i3), ideal(&z12, "ideal(6)"));
    assert_eq!(i2.product(&i3), ideal(&z12, "ideal(6)"));
    assert_eq!(i2.sum(&Ideal::zero(&z12)), i2);
}

#[test]
fn minimal_primes_and_decomposition() {
    let z12 = ring("Z/12");
    let lat = IdealLattice::new(&z12).unwrap();
    let zero = Ideal::zero(&z12);
    let mp: Vec<String> = lat.minimal_primes(&zero).unwrap().iter().map(render_ideal).collect();
    assert_eq!(mp, ["ideal(3)", "ideal(2)"]);
    let pd: Vec<String> = lat.primary_decomposition(&zero).unwrap().iter().map(render_ideal).collect();
    assert_eq!(pd, ["ideal(4)", "ideal(3)"]);
    let pd: Vec<String> = lat.primary_decomposition(&ideal(&z12, "ideal(6)")).unwrap().iter().map(render_ideal).collect();
    assert_eq!(pd, ["ideal(3)", "ideal(2)"]);
    let r = ring("Z/2[x]/(x^3)");
    let mp = IdealLattice::new(&r).unwrap().minimal_primes(&Ideal::zero(&r)).unwrap();
    assert_eq!(mp, vec![ideal(&r, "ideal(x)")]);
    assert!(matches!(lat.minimal_primes(&Ideal::unit(&z12)), Err(Error::NoPrimes)));
}

#[test]
fn saturation_and_localization() {
    let z12 = ring("Z/12");
    let s = mult(&z12, "mult(4)");
    assert_eq!(s.members().to_vec(), vec![1, 4]);
    assert_eq!(s.saturate().members().to_vec(), vec![1, 2, 4, 5, 7, 8, 10, 11]);
    let u = MultSet::units(&z12);
    assert_eq!(u.saturate(), u);
    let z6 = ring("Z/6");
    assert_eq!(mult(&z6, "mult(4)").saturate().members().to_vec(), vec![1, 2, 4, 5]);

    let (sat, t) = sat_ideal(&Ideal::zero(&z12), &s).unwrap();
    assert_eq!((sat, t), (ideal(&z12, "ideal(3)"), 4));
    let i3 = ideal(&z12, "ideal(3)");
    assert_eq!(sat_ideal(&i3, &s).unwrap().0, i3);
    assert_eq!(sat_ideal(&i3, &MultSet::trivial(&z12)).unwrap().0, i3);
    assert!(matches!(sat_ideal(&ideal(&z12, "ideal(2)"), &s), Err(Error::NotDisjoint(4))));

    let loc = localize(&z12, &s).unwrap();
    assert_eq!(loc.ring.order(), 3);
    assert_eq!(loc.kernel, i3);
    assert_eq!(loc.map.apply(4), loc.ring.one());
    assert!(localize(&z12, &u).unwrap().map.is_bijective());
    let loc6 = localize(&z6, &mult(&z6, "mult(4)")).unwrap();
    assert_eq!(loc6.ring.order(), 3);
    assert_eq!(loc6.kernel.members().to_vec(), vec![0, 3]);
    assert!(extend_ideal(&Ideal::zero(&z12), &loc).is_zero());
    assert!(extend_ideal(&ideal(&z12, "ideal(2)"), &loc).is_unit_ideal());
    assert!(matches!(localize(&z12, &mult(&z12, "mult(6)")), Err(Error::LocalizationIsZero)));
}

#[test]
fn strongly_multiplicative() {
    let z12 = ring("Z/12");
    let v = mult(&z12, "mult(4)").is_strongly_multiplicative();
    assert!(v.holds);
    assert_eq!(v.witness_s, Some(4));
    assert_eq!(MultSet::trivial(&z12).is_strongly_multiplicative().witness_s, Some(1));
    // the closure of {4, 9} contains 36 = 0, which lies in every sR
    let v = mult(&z12, "mult(4, 9)").is_strongly_multiplicative();
    assert_eq!(v.witness_s, Some(0));
}

#[test]
fn absorbing_examples() {
    let z12 = ring("Z/12");
    let zero = Ideal::zero(&z12);
    let v = is_n_absorbing(&zero, 2).unwrap();
    assert!(!v.holds);
    assert_eq!(v.counterexample, Some(vec![2, 2, 3]));
    assert!(is_n_absorbing(&zero, 3).unwrap().holds);
    assert!(is_n_absorbing(&ideal(&z12, "ideal(3)"), 1).unwrap().holds);

    let s = mult(&z12, "mult(4)");
    let v = is_s_n_absorbing(&zero, &s, 1).unwrap();
    assert!(v.holds);
    assert_eq!(v.witness_s, Some(4));
    let all = is_s_n_absorbing_with(&zero, &s, 1, WitnessMode::All).unwrap();
    assert_eq!(all.witnesses, vec![4]);
    assert!(matches!(is_n_absorbing(&zero, 0), Err(Error::Precondition(_))));
    assert!(matches!(is_s_n_absorbing(&ideal(&z12, "ideal(2)"), &s, 1), Err(Error::NotDisjoint(4))));
}

#[test]
fn finite_polynomial_analogue() {
    let r = ring("Z/6[x]/(x^3)");
    assert_eq!(r.order(), 216);
    let i = ideal(&r, "ideal(2*x^2)");
    let s = mult(&r, "mult(4)");
    assert_eq!(s.members().to_vec(), vec![1, 4]);
    let v2 = is_s_n_absorbing(&i, &s, 2).unwrap();
    assert!(v2.holds);
    assert_eq!(v2.witness_s, Some(4));
    assert!(check_witness(&i, 4, 2).unwrap().holds);
    let v1 = is_s_n_absorbing(&i, &s, 1).unwrap();
    assert!(!v1.holds);
    assert!(replay_counterexample(&i, &s, v1.counterexample.as_ref().unwrap()));
    let plain = is_n_absorbing(&i, 2).unwrap();
    assert!(!plain.holds);
    assert!(replay_counterexample(&i, &MultSet::trivial(&r), plain.counterexample.as_ref().unwrap()));
    assert!(colon_stabilization_check(&i, &s, 4, 2).unwrap().holds);
}

#[test]
fn omega_values() {
    let z12 = ring("Z/12");
    let zero = Ideal::zero(&z12);
    assert_eq!(omega(&zero, &MultSet::trivial(&z12)).unwrap().value, 3);
    let w = omega(&zero, &mult(&z12, "mult(4)")).unwrap();
    assert_eq!((w.value, w.witness_s), (1, Some(4)));
    assert_eq!(omega(&ideal(&z12, "ideal(2)"), &MultSet::trivial(&z12)).unwrap().value, 1);
    let r = ring("Z/2[x]/(x^3)");
    assert_eq!(omega(&Ideal::zero(&r), &MultSet::trivial(&r)).unwrap().value, 3);
    let p = ring("product(Z/12, Z/5)");
    assert_eq!(omega(&Ideal::zero(&p), &MultSet::trivial(&p)).unwrap().value, 4);
}

#[test]
fn omega_tables() {
    let z12 = ring("Z/12");
    let lat = IdealLattice::new(&z12).unwrap();
    let table = omega_table(&lat, &MultSet::units(&z12)).unwrap();
    let got: Vec<(String, usize)> = table.entries.iter().map(|(i, w)| (render_ideal(i), w.value)).collect();
    let want = [("ideal()", 3), ("ideal(6)", 2), ("ideal(4)", 2), ("ideal(3)", 1), ("ideal(2)", 1)];
    assert_eq!(got, want.map(|(a, b)| (a.to_string(), b)));
    assert_eq!(table.values.iter().copied().collect::<Vec<_>>(), vec![1, 2, 3]);

    let table = omega_table(&lat, &mult(&z12, "mult(4)")).unwrap();
    let got: Vec<String> = table.entries.iter().map(|(i, _)| render_ideal(i)).collect();
    assert_eq!(got, ["ideal()", "ideal(6)", "ideal(3)"]);
    assert_eq!(table.values.iter().copied().collect::<Vec<_>>(), vec![1]);

    let f = ring("Z/7");
    let table = omega_table(&IdealLattice::new(&f).unwrap(), &MultSet::trivial(&f)).unwrap();
    assert_eq!(table.values.iter().copied().collect::<Vec<_>>(), vec![1]);
}

#[test]
fn s_variants() {
    let z12 = ring("Z/12");
    let zero = Ideal::zero(&z12);
    let v = s_variant_predicates(&zero, &mult(&z12, "mult(4)")).unwrap();
    assert!(v.s_prime.holds);
    assert_eq!(v.s_prime.witness_s, Some(4));
    let v = s_variant_predicates(&zero, &MultSet::trivial(&z12)).unwrap();
    assert!(!v.s_prime.holds);
    assert!(!v.s_primary.holds);
    assert!(!v.strongly_s_primary.holds);
    let p = ideal(&z12, "ideal(3)");
    let v = s_variant_predicates(&p, &MultSet::trivial(&z12)).unwrap();
    assert!(v.s_prime.holds && v.s_primary.holds && v.strongly_s_primary.holds);
    assert_eq!(v.strongly_s_primary.witness_t, Some(1));
    assert_eq!(v.strongly_s_primary.exponent, Some(1));
}

#[test]
fn ring_classes() {
    let z8 = ring("Z/8");
    let c = ring_class_predicates(&IdealLattice::new(&z8).unwrap()).unwrap();
    assert!(c.chained.holds && c.divided.holds);
    let z12 = ring("Z/12");
    let c = ring_class_predicates(&IdealLattice::new(&z12).unwrap()).unwrap();
    assert!(!c.chained.holds);
    assert!(c.arithmetical.holds);
    let f = ring("Z/2[x]/(x^2 + x + 1)");
    let c = ring_class_predicates(&IdealLattice::new(&f).unwrap()).unwrap();
    assert!(c.divided.holds && c.locally_divided.holds && c.chained.holds && c.arithmetical.holds);
}

#[test]
fn minimal_absorbing_over_zero() {
    let z12 = ring("Z/12");
    let lat = IdealLattice::new(&z12).unwrap();
    let one = MultSet::trivial(&z12);
    let zero = Ideal::zero(&z12);
    let render = |v: Vec<Ideal>| v.iter().map(render_ideal).collect::<Vec<_>>();
    assert_eq!(render(minimal_s_n_absorbing_over(&lat, &zero, &one, 2).unwrap()), ["ideal(6)", "ideal(4)"]);
    assert_eq!(render(minimal_s_n_absorbing_over(&lat, &zero, &one, 1).unwrap()), ["ideal(3)", "ideal(2)"]);
    let i6 = ideal(&z12, "ideal(6)");
    assert_eq!(minimal_s_n_absorbing_over(&lat, &i6, &one, 2).unwrap(), vec![i6]);
}

#[test]
fn colon_stabilization() {
    let z12 = ring("Z/12");
    let s = mult(&z12, "mult(4)");
    assert!(colon_stabilization_check(&Ideal::zero(&z12), &s, 4, 1).unwrap().holds);
    assert!(colon_stabilization_check(&Ideal::zero(&z12), &MultSet::trivial(&z12), 1, 3).unwrap().holds);
    assert!(matches!(
        colon_stabilization_check(&Ideal::zero(&z12), &MultSet::trivial(&z12), 1, 1),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn amalgam_constructions() {
    let z4 = ring("Z/4");
    let id = RingHom::identity(&z4);
    let j = ideal(&z4, "ideal(2)");
    let amal = amalgamate(&id, &j).unwrap();
    assert_eq!(amal.ring.order(), 8);
    assert_eq!(render_ring(&amal.ring), "amalg(Z/4, id, ideal(2))");
    assert_eq!(amal.ring.one(), amal.lift(1));
    assert!(amal.pi1.is_surjective());
    assert_eq!(amal.pi1.kernel(), amal.zero_times_j().unwrap());
    assert_eq!(amal.pi2.kernel(), amal.finv_j_times_zero().unwrap());

    let graph = amalgamate(&id, &Ideal::zero(&z4)).unwrap();
    assert_eq!(graph.ring.order(), 4);
    assert!(graph.pi1.is_bijective());
    let z2 = ring("Z/2");
    let red = RingHom::reduction(&z4, &z2).unwrap();
    assert_eq!(amalgamate(&red, &Ideal::zero(&z2)).unwrap().ring.order(), 4);

    let i = ideal(&z4, "ideal(2)");
    let ij = amal.bowtie_j(&i).unwrap();
    assert_eq!(ij.len(), 4);
    let full_h = amal.fj_ideal(&[2]).unwrap();
    assert_eq!(amal.bowtie_h(&i, &full_h).unwrap(), ij);
    let units = MultSet::units(&z4);
    assert!(amal.lift_mult_set(&units).members().is_subset(amal.ring.units()));
}

#[test]
fn amalgam_transfer() {
    let z4 = ring("Z/4");
    let amal = amalgamate(&RingHom::identity(&z4), &ideal(&z4, "ideal(2)")).unwrap();
    let i = ideal(&z4, "ideal(2)");
    let one = MultSet::trivial(&z4);
    let k = amal.fj_ideal(&[2]).unwrap();
    for c in disjointness_lemma_check(&amal, &i, &k, &one).unwrap() {
        assert!(c.passed, "{c:?}");
    }
    let lifted = amal.lift_mult_set(&one);
    assert!(is_s_n_absorbing(&amal.bowtie_j(&i).unwrap(), &lifted, 1).unwrap().holds);
    for c in verify_transfer(&amal, &i, &k, &one, 1, 1).unwrap() {
        assert!(c.passed, "{c:?}");
    }

    let h = amal.fj_ideal(&[]).unwrap();
    let checks = local_ring_lemma_check(&amal, &i, &h).unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    let checks = verify_local_amalgam(&amal, &i, &h, &one, 1, 2).unwrap();
    assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    assert!(matches!(verify_local_amalgam(&amal, &i, &h, &one, 1, 1), Err(Error::Precondition(_))));
}

#[test]
fn amalgam_over_z12() {
    let z12 = ring("Z/12");
    let amal = amalgamate(&RingHom::identity(&z12), &ideal(&z12, "ideal(6)")).unwrap();
    let s = mult(&z12, "mult(4)");
    let zero = Ideal::zero(&z12);
    let lifted = amal.lift_mult_set(&s);
    assert_eq!(lifted.len(), 2);
    let ij = amal.bowtie_j(&zero).unwrap();
    let v = is_s_n_absorbing(&ij, &lifted, 1).unwrap();
    assert!(v.holds);
    assert_eq!(v.witness_s, Some(amal.lift(4)));
    assert!(is_s_n_absorbing(&zero, &s, 1).unwrap().holds);
}

#[test]
fn renders() {
    let z12 = ring("Z/12");
    assert_eq!(render_ring(&z12), "Z/12");
    assert_eq!(render_ideal(&ideal(&z12, "ideal(0, 6)")), "ideal(6)");
    assert_eq!(render_multset(&mult(&z12, "mult(4, 4)")), "mult(4)");
    assert_eq!(render_multset(&mult(&z12, "mult(4)+noone")), "mult(4)+noone");
    assert_eq!(render_ring(&ring("Z/6[x]/(x^3)")), "Z/6[x]/(x^3)");
}
