//! Named corpora: rings with their ideal lattices and multiplicative-set
//! families, plus the amalgamations, products, extensions, and surjections
//! that the structural checks range over.

use std::collections::HashSet;
use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snabs_core::amalgam::{amalgamate, Amalgamation};
use snabs_core::dsl::{self, render_ideal, render_ring, RingExpr, Sort};
use snabs_core::ring::Shape;
use snabs_core::{mult_closure, Error, FiniteRing, Ideal, IdealLattice, MultSet, Result, RingHom};

pub const CORPUS_NAMES: &[&str] = &["default", "products", "fields", "small", "random"];

/// Largest `n` checked for a ring of the given order.
pub fn n_max(order: usize) -> usize {
    if order <= 16 {
        4
    } else {
        3
    }
}

/// `{1}`, the units, and the closure of every nonzero nonunit
/// non-nilpotent element, without duplicates, in that order.
pub fn mult_family(ring: &Arc<FiniteRing>) -> Vec<MultSet> {
    let mut seen = HashSet::new();
    let mut family = Vec::new();
    let mut push = |set: MultSet| {
        if seen.insert(set.members().clone()) {
            family.push(set);
        }
    };
    push(MultSet::trivial(ring));
    push(MultSet::units(ring));
    for x in 0..ring.order() {
        if x != ring.zero() && !ring.is_unit(x) && !ring.nilpotents().contains(x) {
            push(mult_closure(ring, &[x], true).expect("a generator is present"));
        }
    }
    family
}

pub struct RingUnit {
    pub text: String,
    pub ring: Arc<FiniteRing>,
    pub lattice: IdealLattice,
    pub sets: Vec<MultSet>,
    pub n_max: usize,
}

impl RingUnit {
    pub fn new(ring: Arc<FiniteRing>) -> Result<RingUnit> {
        let lattice = IdealLattice::new(&ring)?;
        Ok(RingUnit {
            text: render_ring(&ring),
            sets: mult_family(&ring),
            n_max: n_max(ring.order()),
            lattice,
            ring,
        })
    }

    pub fn ns(&self) -> RangeInclusive<usize> {
        1..=self.n_max
    }

    /// Proper ideals disjoint from `set`.
    pub fn disjoint<'a>(&'a self, set: &'a MultSet) -> impl Iterator<Item = &'a Ideal> + 'a {
        self.lattice.proper().filter(move |i| set.meets(i).is_none())
    }
}

pub struct AmalgUnit {
    /// Index of the amalgamated ring in `Corpus::rings`.
    pub ring: usize,
    pub amal: Amalgamation,
    pub a_lattice: IdealLattice,
    pub fj_lattice: IdealLattice,
    pub a_sets: Vec<MultSet>,
}

pub struct ProductUnit {
    pub ring: usize,
    pub left: RingUnit,
    pub right: RingUnit,
}

/// A ring `R` inside a larger ring `T`.
pub struct ExtensionUnit {
    pub text: String,
    pub small: usize,
    pub big: Arc<FiniteRing>,
    pub big_lattice: IdealLattice,
    pub inclusion: RingHom,
}

/// A surjection `R -> Im` out of a corpus ring.
pub struct HomUnit {
    pub text: String,
    pub source: usize,
    pub map: RingHom,
    pub image_lattice: IdealLattice,
}

pub struct Corpus {
    pub name: String,
    pub seed: u64,
    pub rings: Vec<RingUnit>,
    pub amalgams: Vec<AmalgUnit>,
    pub products: Vec<ProductUnit>,
    pub extensions: Vec<ExtensionUnit>,
    pub homs: Vec<HomUnit>,
    /// Rings that could not be built, with the reason.
    pub excluded: Vec<String>,
}

impl Corpus {
    pub fn named(name: &str, seed: u64) -> Result<Corpus> {
        let texts = match name {
            "default" => default_texts()?,
            "products" => product_texts(),
            "fields" => field_texts(),
            "small" => small_texts(),
            "random" => random_texts(seed),
            other => return Err(Error::Semantic(format!("unknown corpus '{other}'; expected one of {}", CORPUS_NAMES.join(", ")))),
        };
        Ok(Corpus::from_texts(name, seed, &texts))
    }

    /// Builds every unit derivable from the given ring expressions. Texts
    /// that fail to parse or exceed the order cap are listed in `excluded`.
    pub fn from_texts(name: &str, seed: u64, texts: &[String]) -> Corpus {
        let mut corpus = Corpus {
            name: name.to_string(),
            seed,
            rings: Vec::new(),
            amalgams: Vec::new(),
            products: Vec::new(),
            extensions: Vec::new(),
            homs: Vec::new(),
            excluded: Vec::new(),
        };
        for text in texts {
            if let Err(e) = corpus.add(text) {
                corpus.excluded.push(format!("{text}: {e}"));
            }
        }
        if let Err(e) = corpus.add_homs() {
            corpus.excluded.push(format!("surjections: {e}"));
        }
        corpus
    }

    fn add(&mut self, text: &str) -> Result<()> {
        let expr = match dsl::parse(text, Sort::Ring)? {
            dsl::Ast::Ring(r) => r,
            _ => unreachable!("ring sort parses to a ring"),
        };
        match &expr {
            RingExpr::Amalg(base, hom, ideal) => {
                let a = dsl::elaborate_ring(base)?;
                let f = dsl::elaborate_hom(hom, &a)?;
                let j = dsl::elaborate_ideal(ideal, f.target())?;
                let amal = amalgamate(&f, &j)?;
                let unit = RingUnit::new(amal.ring.clone())?;
                let amal_unit = AmalgUnit {
                    ring: self.rings.len(),
                    a_lattice: IdealLattice::new(&amal.a)?,
                    fj_lattice: IdealLattice::new(&amal.fj)?,
                    a_sets: mult_family(&amal.a),
                    amal,
                };
                let ext = ExtensionUnit {
                    text: format!("{} in {}", unit.text, render_ring(&amal_unit.amal.ambient)),
                    small: self.rings.len(),
                    big: amal_unit.amal.ambient.clone(),
                    big_lattice: IdealLattice::new(&amal_unit.amal.ambient)?,
                    inclusion: amal_unit.amal.inclusion.clone(),
                };
                self.rings.push(unit);
                self.amalgams.push(amal_unit);
                self.extensions.push(ext);
            }
            _ => {
                let ring = dsl::elaborate_ring(&expr)?;
                let unit = RingUnit::new(ring.clone())?;
                let index = self.rings.len();
                match ring.shape() {
                    Shape::Product { left, right } => {
                        let product = ProductUnit { ring: index, left: RingUnit::new(left.clone())?, right: RingUnit::new(right.clone())? };
                        self.products.push(product);
                    }
                    Shape::PolyQuot { n, .. } => {
                        let base = FiniteRing::zmod(*n as u64)?;
                        let base_text = render_ring(&base);
                        self.rings.push(unit);
                        let small = match self.rings.iter().position(|u| u.text == base_text) {
                            Some(k) => k,
                            None => {
                                self.rings.push(RingUnit::new(base.clone())?);
                                self.rings.len() - 1
                            }
                        };
                        let images = (0..*n).map(|c| ring.from_int(c as u64)).collect();
                        let inclusion = RingHom::new(self.rings[small].ring.clone(), ring.clone(), images)?;
                        let big = &self.rings[index];
                        self.extensions.push(ExtensionUnit {
                            text: format!("{base_text} in {}", big.text),
                            small,
                            big: ring.clone(),
                            big_lattice: big.lattice.clone(),
                            inclusion,
                        });
                        return Ok(());
                    }
                    _ => {}
                }
                self.rings.push(unit);
            }
        }
        Ok(())
    }

    /// Quotient maps by every proper nonzero ideal, the two projections of
    /// each amalgamation, and each extension's inclusion onto its image.
    fn add_homs(&mut self) -> Result<()> {
        let mut homs = Vec::new();
        for (index, unit) in self.rings.iter().enumerate() {
            for k in unit.lattice.proper().filter(|k| !k.is_zero()) {
                let (q, map) = FiniteRing::quotient(k)?;
                homs.push(HomUnit {
                    text: format!("{} -> {}", unit.text, render_ring(&q)),
                    source: index,
                    image_lattice: IdealLattice::new(&q)?,
                    map,
                });
            }
        }
        for au in &self.amalgams {
            let text = &self.rings[au.ring].text;
            for (label, map) in [("pi1", &au.amal.pi1), ("pi2", &au.amal.pi2)] {
                homs.push(HomUnit {
                    text: format!("{label}: {text} -> {}", render_ring(map.target())),
                    source: au.ring,
                    image_lattice: IdealLattice::new(map.target())?,
                    map: map.clone(),
                });
            }
        }
        for ext in &self.extensions {
            let (image, onto, _) = ext.inclusion.factor_through_image()?;
            homs.push(HomUnit {
                text: format!("onto image: {}", ext.text),
                source: ext.small,
                image_lattice: IdealLattice::new(&image)?,
                map: onto,
            });
        }
        self.homs = homs;
        Ok(())
    }

    pub fn ring_texts(&self) -> Vec<&str> {
        self.rings.iter().map(|u| u.text.as_str()).collect()
    }

    /// Keeps only the units whose ring renders as `text`.
    pub fn restrict(name: &str, seed: u64, text: &str) -> Result<Corpus> {
        let ring = dsl::parse_ring(text)?;
        Ok(Corpus::from_texts(name, seed, &[render_ring(&ring)]))
    }
}

fn default_texts() -> Result<Vec<String>> {
    let mut texts: Vec<String> = (2..=36).map(|n| format!("Z/{n}")).collect();
    for t in [
        "Z/2[x]/(x^2 + x + 1)",
        "Z/2[x]/(x^3)",
        "Z/4[x]/(x^2)",
        "Z/9[x]/(x^2)",
        "Z/6[x]/(x^3)",
        "product(Z/4, Z/9)",
        "product(Z/8, Z/3)",
        "product(Z/12, Z/5)",
    ] {
        texts.push(t.to_string());
    }
    texts.extend(amalgam_texts()?);
    Ok(texts)
}

/// Amalgamations of `Z/4`, `Z/8`, `Z/9` along the identity and each
/// reduction, over every ideal of the target.
fn amalgam_texts() -> Result<Vec<String>> {
    let homs: &[(u64, &str)] = &[
        (4, "id"),
        (4, "reduce(Z/2)"),
        (8, "id"),
        (8, "reduce(Z/4)"),
        (8, "reduce(Z/2)"),
        (9, "id"),
        (9, "reduce(Z/3)"),
    ];
    let mut texts = Vec::new();
    for &(n, hom) in homs {
        let a = FiniteRing::zmod(n)?;
        let f = dsl::parse_hom(hom, &a)?;
        for j in IdealLattice::new(f.target())?.ideals() {
            texts.push(format!("amalg(Z/{n}, {hom}, {})", render_ideal(j)));
        }
    }
    Ok(texts)
}

fn product_texts() -> Vec<String> {
    let factors = ["Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/8", "Z/9", "Z/2[x]/(x^2)"];
    let orders = [2, 3, 4, 5, 6, 8, 9, 4];
    let mut texts = Vec::new();
    for i in 0..factors.len() {
        for j in i..factors.len() {
            if orders[i] * orders[j] <= 64 {
                texts.push(format!("product({}, {})", factors[i], factors[j]));
            }
        }
    }
    texts.push("product(Z/12, Z/5)".into());
    texts
}

fn field_texts() -> Vec<String> {
    let mut texts: Vec<String> = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31].iter().map(|p| format!("Z/{p}")).collect();
    for t in ["Z/2[x]/(x^2 + x + 1)", "Z/3[x]/(x^2 + 1)", "Z/2[x]/(x^3 + x + 1)", "Z/5[x]/(x^2 + 2)"] {
        texts.push(t.into());
    }
    texts
}

fn small_texts() -> Vec<String> {
    let mut texts: Vec<String> = (2..=12).map(|n| format!("Z/{n}")).collect();
    for t in ["Z/2[x]/(x^2)", "product(Z/2, Z/2)", "product(Z/2, Z/3)", "amalg(Z/4, id, ideal(2))"] {
        texts.push(t.into());
    }
    texts
}

/// Sixteen seeded draws from several ring families, each of order at most 64.
fn random_texts(seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut texts = Vec::new();
    let mut seen = HashSet::new();
    while texts.len() < 16 {
        let text = match rng.gen_range(0..5) {
            0 => format!("Z/{}", rng.gen_range(2..=64)),
            1 => {
                let a = rng.gen_range(2..=8u64);
                let b = rng.gen_range(2..=64 / a);
                format!("product(Z/{a}, Z/{b})")
            }
            2 => {
                let (p, k) = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)][rng.gen_range(0..8)];
                let c = rng.gen_range(0..p);
                if c == 0 {
                    format!("Z/{p}[x]/(x^{k})")
                } else {
                    format!("Z/{p}[x]/(x^{k} + {c})")
                }
            }
            3 => {
                let n = rng.gen_range(4..=64u64);
                let divisors: Vec<u64> = (2..n).filter(|d| n % d == 0).collect();
                if divisors.is_empty() {
                    format!("Z/{n}")
                } else {
                    format!("quot(Z/{n}, ideal({}))", divisors[rng.gen_range(0..divisors.len())])
                }
            }
            _ => {
                let (q, e) = [(2u64, 2u32), (2, 3), (3, 2), (2, 4)][rng.gen_range(0..4)];
                let j = rng.gen_range(1..e);
                format!("amalg(Z/{}, id, ideal({}))", q.pow(e), q.pow(j))
            }
        };
        if seen.insert(text.clone()) {
            texts.push(text);
        }
    }
    texts
}
