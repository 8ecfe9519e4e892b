//! The proposition registry. Each checker instantiates a statement's
//! hypotheses over a corpus, skips instances where they fail, and asserts
//! the conclusion on the rest.

mod amalgam;
mod ideals;
mod local;
mod omega;

use std::time::{Duration, Instant};

use crate::corpus::Corpus;
use crate::engine::Tally;
use crate::report::PropReport;

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    /// Per-instance time cap.
    pub cap: Option<Duration>,
}

impl Default for Settings {
    fn default() -> Settings {
        Settings { cap: Some(Duration::from_secs(30)) }
    }
}

pub struct Prop {
    pub id: &'static str,
    pub slug: &'static str,
    pub title: &'static str,
    pub run: fn(&Corpus, &Settings) -> Tally,
}

macro_rules! prop {
    ($id:literal, $slug:literal, $title:literal, $run:path) => {
        Prop { id: $id, slug: $slug, title: $title, run: $run }
    };
}

pub static PROPS: &[Prop] = &[
    prop!("2.3(1)", "ideal-product", "I S-n-absorbing and J meeting S give IJ S-n-absorbing", ideals::ideal_product),
    prop!("2.3(2)", "extension-contraction", "J S-n-absorbing in T ⊇ R gives J ∩ R S-n-absorbing", ideals::extension_contraction),
    prop!("2.3(3)", "mixed-intersection", "intersection over S1, S2 is S1S2-(n1+n2)-absorbing", ideals::mixed_intersection),
    prop!("2.3(4)", "intersection", "intersection is S-(n1+n2)-absorbing", ideals::intersection),
    prop!("2.3(5)", "radical", "radical is S-n-absorbing and s a^n lies in I", ideals::radical),
    prop!("2.4", "comaximal-product", "product of k pairwise comaximal S-primes is S-k-absorbing", ideals::comaximal_product),
    prop!("2.5(1)", "hom-image", "I ⊇ ker is S-n-absorbing iff its image is", ideals::hom_image),
    prop!("2.5(2)", "hom-preimage", "J is f(S)-n-absorbing iff its preimage is", ideals::hom_preimage),
    prop!("2.6", "hom-correspondence", "image map is an order bijection on S-n-absorbing ideals over ker", ideals::hom_correspondence),
    prop!("2.7", "quotient", "J ⊇ I is S-n-absorbing iff J/I is S/I-n-absorbing", ideals::quotient),
    prop!("2.8", "colon-stabilization", "I:s^n = I:s^k for k ≥ n at n = omega", ideals::colon_stabilization),
    prop!("2.9", "colon-characterization", "S-n-absorbing iff I:s is n-absorbing for some s", ideals::colon_characterization),
    prop!("2.10", "minimal-prime-bound", "at most n minimal primes disjoint from S", ideals::minimal_prime_bound),
    prop!("2.11", "chain-intersection", "chains of S-n-absorbing ideals have S-n-absorbing meets", ideals::chain_intersection),
    prop!("2.12", "minimal-existence", "minimal S-n-absorbing ideals over J exist", ideals::minimal_existence),
    prop!("3.1", "localization-extension", "I S-n-absorbing gives IR_S n-absorbing", local::localization_extension),
    prop!("v31", "saturation-colon", "Sat_S(I) = I:t and its S-primary decompositions", local::saturation_colon),
    prop!("3.4", "laskerian-equivalence", "I S-n-absorbing iff IR_S n-absorbing", local::laskerian_equivalence),
    prop!("3.5", "locally-divided", "IR_S n-absorbing with Sat = I:s iff S-n-absorbing", local::locally_divided),
    prop!("4.1(1)", "omega-image", "omega is preserved by images over ker", omega::omega_image),
    prop!("4.1(2)", "omega-preimage", "omega is preserved by preimages", omega::omega_preimage),
    prop!("4.1(3)", "omega-colon", "omega equals the least omega of some I:s", omega::omega_colon),
    prop!("4.1(4)", "omega-localization", "omega equals the omega of IR_S", omega::omega_localization),
    prop!("4.1(5)", "omega-saturation", "omega equals the omega of Sat_S(I)", omega::omega_saturation),
    prop!("4.2", "omega-product", "omega is additive on products", omega::omega_product),
    prop!("4.3", "product-absorbing", "I1 × I2 is (S1 × S2)-(m+n)-absorbing", omega::product_absorbing),
    prop!("4.4", "exactly-n-primes", "n minimal primes force omega = n and s P1...Pn ⊆ I", omega::exactly_n_primes),
    prop!("4.6", "saturation-invariance", "S and its saturation give the same verdicts", omega::saturation_invariance),
    prop!("4.7(1)", "omega-finite", "strongly S-Laskerian and omega finite", omega::omega_finite),
    prop!("4.7(2)", "arithmetical", "arithmetical rings: S-Noetherian, strongly S-Laskerian, omega finite", omega::arithmetical),
    prop!("5.1", "amalgam-disjointness", "disjointness transfers to the amalgamation", amalgam::disjointness),
    prop!("5.2(1)", "amalgam-bowtie", "I S-n-absorbing iff I⋈J is", amalgam::transfer_bowtie),
    prop!("5.2(2)", "amalgam-kbar", "K f(S)-n-absorbing iff K̄ is", amalgam::transfer_kbar),
    prop!("5.2(3)", "amalgam-ixk", "(I × K)‾ is (m+n)-absorbing", amalgam::transfer_ixk),
    prop!("5.3", "amalgam-correspondence", "S-n-absorbing ideals over a kernel come from A or f(A)+J", amalgam::correspondence),
    prop!("5.6", "primary-sufficiency", "P-primary with s P^n ⊆ I is S-n-absorbing", amalgam::primary_sufficiency),
    prop!("5.7", "radical-power", "a witness s has s sqrt(I)^n ⊆ I", amalgam::radical_power),
    prop!("5.8", "local-radical", "radical identity and primary transport over a local base", amalgam::local_radical),
    prop!("5.9", "local-amalgam", "association to s transfers to I⋈H and (s, f(s))", amalgam::local_amalgam),
];

/// Ids that stand for several registered clauses.
pub const GROUPS: &[(&str, &[&str])] = &[
    ("2.3", &["2.3(1)", "2.3(2)", "2.3(3)", "2.3(4)", "2.3(5)"]),
    ("2.5", &["2.5(1)", "2.5(2)"]),
    ("4.1", &["4.1(1)", "4.1(2)", "4.1(3)", "4.1(4)", "4.1(5)"]),
    ("4.7", &["4.7(1)", "4.7(2)"]),
    ("5.2", &["5.2(1)", "5.2(2)", "5.2(3)"]),
];

pub fn lookup(key: &str) -> Option<&'static Prop> {
    PROPS.iter().find(|p| p.id == key || p.slug == key)
}

/// Resolves ids, slugs, group ids, and `all` into registry order.
pub fn resolve(keys: &[String]) -> Result<Vec<&'static Prop>, String> {
    if keys.is_empty() || keys.iter().any(|k| k == "all") {
        return Ok(PROPS.iter().collect());
    }
    let mut wanted = Vec::new();
    for key in keys {
        if let Some((_, members)) = GROUPS.iter().find(|(g, _)| g == key) {
            wanted.extend(members.iter().map(|m| lookup(m).expect("group members are registered")));
        } else if let Some(p) = lookup(key) {
            wanted.push(p);
        } else {
            return Err(format!("unknown proposition id '{key}'"));
        }
    }
    Ok(PROPS.iter().filter(|p| wanted.iter().any(|w| w.id == p.id)).collect())
}

pub fn run(prop: &Prop, corpus: &Corpus, settings: &Settings, timings: bool) -> PropReport {
    let start = Instant::now();
    let t = (prop.run)(corpus, settings);
    PropReport {
        id: prop.id.to_string(),
        slug: prop.slug.to_string(),
        title: prop.title.to_string(),
        run: t.run,
        passed: t.passed,
        failed: t.failed,
        skipped: t.skipped,
        skip_reasons: t.skip_reasons,
        failures: t.failures,
        notes: t.notes,
        wall_ms: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Keeps the first note starting with `prefix` and replaces the rest by a count.
fn summarize_notes(t: &mut Tally, prefix: &str, summary: impl FnOnce(usize) -> String) {
    let hits: Vec<String> = t.notes.iter().filter(|n| n.starts_with(prefix)).cloned().collect();
    t.notes.retain(|n| !n.starts_with(prefix));
    if let Some(first) = hits.first() {
        t.notes.push(first.clone());
    }
    t.notes.push(summary(hits.len()));
}
