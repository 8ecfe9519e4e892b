//! Independent brute-force oracles. Nothing here uses the library's tuple
//! search, colon shortcuts, associate reduction, or lattice routines.

use std::sync::Arc;

use snabs_core::classify::{is_n_absorbing, is_s_n_absorbing, is_s_n_absorbing_with, omega, replay_counterexample, WitnessMode};
use snabs_core::dsl::parse_ring;
use snabs_core::{all_ideals, localize, mult_closure, FiniteRing, Ideal, MultSet};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn totient(n: u64) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

fn divisor_count(n: u64) -> usize {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count()
}

/// Calls `visit` on every nondecreasing sequence of length `len` over `0..order`.
fn multisets(order: usize, len: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(order: usize, len: usize, start: usize, buf: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if buf.len() == len {
            return visit(buf);
        }
        for x in start..order {
            buf.push(x);
            if !go(order, len, x, buf, visit) {
                return false;
            }
            buf.pop();
        }
        true
    }
    go(order, len, 0, &mut Vec::new(), visit)
}

fn product(ring: &FiniteRing, xs: impl Iterator<Item = usize>) -> usize {
    xs.fold(ring.one(), |acc, x| ring.mul(acc, x))
}

/// Every `(n+1)`-multiset with product in `I` has `s` times some
/// `n`-subproduct in `I`.
fn brute_associated(ring: &FiniteRing, ideal: &Ideal, s: usize, n: usize) -> bool {
    multisets(ring.order(), n + 1, &mut |t| {
        if !ideal.contains(product(ring, t.iter().copied())) {
            return true;
        }
        (0..t.len()).any(|j| {
            let sub = product(ring, t.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x));
            ideal.contains(ring.mul(s, sub))
        })
    })
}

fn brute_witnesses(ideal: &Ideal, set: &MultSet, n: usize) -> Vec<usize> {
    set.iter().filter(|&s| brute_associated(ideal.ring(), ideal, s, n)).collect()
}

fn brute_omega(ideal: &Ideal, set: &MultSet) -> usize {
    (1..).find(|&n| !brute_witnesses(ideal, set, n).is_empty()).unwrap()
}

fn brute_is_ideal(ring: &FiniteRing, mem: &[bool]) -> bool {
    if !mem[ring.zero()] {
        return false;
    }
    for x in 0..ring.order() {
        if !mem[x] {
            continue;
        }
        for y in 0..ring.order() {
            if mem[y] && !mem[ring.add(x, y)] {
                return false;
            }
            if !mem[ring.mul(x, y)] {
                return false;
            }
        }
    }
    true
}

fn small_rings() -> Vec<Arc<FiniteRing>> {
    let mut texts: Vec<String> = (2..=24).map(|n| format!("Z/{n}")).collect();
    texts.extend(
        [
            "Z/2[x]/(x^2 + x + 1)",
            "Z/2[x]/(x^3)",
            "Z/4[x]/(x^2)",
            "Z/2[x]/(x^2)",
            "Z/3[x]/(x^2)",
            "Z/2[x]/(x^4)",
            "product(Z/2, Z/2)",
            "product(Z/2, Z/4)",
            "product(Z/4, Z/4)",
            "product(Z/2, product(Z/2, Z/2))",
            "product(Z/2, Z/2[x]/(x^2))",
            "quot(Z/2[x]/(x^4), ideal(x^3))",
            "amalg(Z/4, id, ideal(2))",
            "amalg(Z/2[x]/(x^2), id, ideal(x))",
        ]
        .map(String::from),
    );
    texts.iter().map(|t| parse_ring(t).unwrap()).collect()
}

fn mult_family(ring: &Arc<FiniteRing>) -> Vec<MultSet> {
    let mut sets = vec![MultSet::trivial(ring), MultSet::units(ring)];
    for x in 0..ring.order() {
        if x != ring.zero() && !ring.is_unit(x) && !ring.nilpotents().contains(x) {
            let s = mult_closure(ring, &[x], true).unwrap();
            if !sets.contains(&s) {
                sets.push(s);
            }
        }
    }
    sets
}

#[test]
fn zmod_tables_match_modular_arithmetic() {
    for n in 2..=40u64 {
        let r = FiniteRing::zmod(n).unwrap();
        for x in 0..n as usize {
            for y in 0..n as usize {
                assert_eq!(r.add(x, y), (x + y) % n as usize);
                assert_eq!(r.mul(x, y), (x * y) % n as usize);
            }
        }
        assert_eq!(r.units().len(), totient(n), "Z/{n}");
    }
}

#[test]
fn polynomial_tables_match_naive_multiplication() {
    for (text, n, modulus) in [
        ("Z/6[x]/(x^3)", 6usize, vec![0usize, 0, 0, 1]),
        ("Z/4[x]/(x^2 + 1)", 4, vec![1, 0, 1]),
        ("Z/3[x]/(x^3 + 2*x + 1)", 3, vec![1, 2, 0, 1]),
    ] {
        let r = parse_ring(text).unwrap();
        let d = modulus.len() - 1;
        let decode = |mut x: usize| {
            let mut c = vec![0; d];
            for slot in c.iter_mut() {
                *slot = x % n;
                x /= n;
            }
            c
        };
        let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &v| acc * n + v);
        for x in 0..r.order() {
            for y in 0..r.order() {
                let (a, b) = (decode(x), decode(y));
                let mut prod = vec![0usize; 2 * d];
                for i in 0..d {
                    for j in 0..d {
                        prod[i + j] = (prod[i + j] + a[i] * b[j]) % n;
                    }
                }
                for k in (d..2 * d).rev() {
                    let c = prod[k];
                    for (i, &m) in modulus.iter().enumerate() {
                        prod[k - d + i] = (prod[k - d + i] + n * n - c * m % n) % n;
                    }
                }
                assert_eq!(r.mul(x, y), encode(&prod[..d]), "{text}: {x} * {y}");
                let sum: Vec<usize> = a.iter().zip(&b).map(|(p, q)| (p + q) % n).collect();
                assert_eq!(r.add(x, y), encode(&sum));
            }
        }
    }
}

#[test]
fn coprime_products_have_multiplicative_unit_counts() {
    for m in 2..=12u64 {
        for n in 2..=12u64 {
            if gcd(m, n) != 1 {
                continue;
            }
            let p = FiniteRing::product(&FiniteRing::zmod(m).unwrap(), &FiniteRing::zmod(n).unwrap()).unwrap();
            assert_eq!(p.units().len(), totient(m) * totient(n));
        }
    }
}

#[test]
fn zmod_ideal_counts_are_divisor_counts() {
    for n in 2..=64u64 {
        let r = FiniteRing::zmod(n).unwrap();
        assert_eq!(all_ideals(&r).unwrap().len(), divisor_count(n), "Z/{n}");
    }
}

#[test]
fn lattices_match_subset_enumeration() {
    for r in small_rings().into_iter().filter(|r| r.order() <= 12) {
        let mut brute = Vec::new();
        for mask in 0u32..(1 << r.order()) {
            let mem: Vec<bool> = (0..r.order()).map(|i| mask >> i & 1 == 1).collect();
            if brute_is_ideal(&r, &mem) {
                brute.push(mem);
            }
        }
        let mut ours: Vec<Vec<bool>> = all_ideals(&r)
            .unwrap()
            .iter()
            .map(|i| (0..r.order()).map(|x| i.contains(x)).collect())
            .collect();
        brute.sort();
        ours.sort();
        assert_eq!(ours, brute, "{r:?}");
    }
}

#[test]
fn colon_radical_localization_match_scans() {
    for r in small_rings() {
        for i in all_ideals(&r).unwrap() {
            for s in 0..r.order() {
                let colon: Vec<usize> = (0..r.order()).filter(|&x| i.contains(r.mul(s, x))).collect();
                assert_eq!(i.colon(s).members().to_vec(), colon);
            }
            let rad: Vec<usize> = (0..r.order())
                .filter(|&x| (1..=r.order()).any(|k| i.contains(product(&r, std::iter::repeat_n(x, k)))))
                .collect();
            assert_eq!(i.radical().members().to_vec(), rad);
        }
        for set in mult_family(&r).iter().filter(|s| !s.contains_zero()) {
            let killed = (0..r.order()).filter(|&x| set.iter().any(|s| r.mul(s, x) == r.zero())).count();
            let loc = localize(&r, set).unwrap();
            assert_eq!(loc.ring.order() * killed, r.order());
        }
    }
}

#[test]
fn nilpotency_index_matches_power_scan() {
    for r in small_rings() {
        let nil: Vec<usize> = r.nilpotents().to_vec();
        // the product of any t nilpotents vanishes iff the nilradical's t-th power is zero
        let vanishes = |t: usize| {
            let mut ok = true;
            multisets(nil.len(), t, &mut |idx| {
                ok = product(&r, idx.iter().map(|&k| nil[k])) == r.zero();
                ok
            });
            ok
        };
        let t = (1..).find(|&t| vanishes(t)).unwrap();
        assert_eq!(r.jacobson_nilpotency(), t, "{r:?}");
        assert!(t <= r.log2_bound().max(1));
    }
}

#[test]
fn absorbing_predicates_match_full_scan() {
    for r in small_rings() {
        let max_n = if r.order() <= 12 { 4 } else { 3 };
        let ideals = all_ideals(&r).unwrap();
        for set in mult_family(&r) {
            for i in ideals.iter().filter(|i| i.is_proper() && set.meets(i).is_none()) {
                for n in 1..=max_n {
                    let brute = brute_witnesses(i, &set, n);
                    let all = is_s_n_absorbing_with(i, &set, n, WitnessMode::All).unwrap();
                    assert_eq!(all.holds, !brute.is_empty(), "{r:?} {i:?} {set:?} n={n}");
                    assert_eq!(all.witnesses, brute, "{r:?} {i:?} {set:?} n={n}");
                    let first = is_s_n_absorbing(i, &set, n).unwrap();
                    assert_eq!(first.witness_s, brute.first().copied());
                    if let Some(cx) = &first.counterexample {
                        assert!(replay_counterexample(i, &set, cx));
                    }
                    if set.len() == 1 {
                        assert_eq!(is_n_absorbing(i, n).unwrap().holds, !brute.is_empty());
                    }
                }
            }
        }
    }
}

#[test]
fn omega_matches_full_scan() {
    for r in small_rings().into_iter().filter(|r| r.order() <= 16) {
        for set in mult_family(&r) {
            for i in all_ideals(&r).unwrap().iter().filter(|i| i.is_proper() && set.meets(i).is_none()) {
                assert_eq!(omega(i, &set).unwrap().value, brute_omega(i, &set), "{r:?} {i:?} {set:?}");
            }
        }
    }
}

#[test]
fn headline_omegas_by_full_scan() {
    let z12 = parse_ring("Z/12").unwrap();
    let zero = Ideal::zero(&z12);
    assert_eq!(brute_omega(&zero, &MultSet::trivial(&z12)), 3);
    assert_eq!(brute_omega(&zero, &mult_closure(&z12, &[4], true).unwrap()), 1);
    let values: std::collections::BTreeSet<usize> = all_ideals(&z12)
        .unwrap()
        .iter()
        .filter(|i| i.is_proper())
        .map(|i| brute_omega(i, &MultSet::units(&z12)))
        .collect();
    assert_eq!(values.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    let r = parse_ring("Z/2[x]/(x^3)").unwrap();
    assert_eq!(brute_omega(&Ideal::zero(&r), &MultSet::trivial(&r)), 3);
    let z5 = parse_ring("Z/5").unwrap();
    assert_eq!(brute_omega(&Ideal::zero(&z5), &MultSet::trivial(&z5)), 1);
}
