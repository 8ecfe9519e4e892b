//! The `snabs` command line. [`run`] does all the work in-process and hands
//! back the exit code and output, so tests can drive it without a subprocess.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use snabs_core::classify::{is_n_absorbing, is_s_n_absorbing, omega, omega_table, s_variant_predicates};
use snabs_core::dsl::{self, render_element, render_ideal, render_ring};
use snabs_core::ring::set_order_cap;
use snabs_core::{amalgam::amalgamate, localize, Error, FiniteRing, IdealLattice, Verdict};

use crate::corpus::{Corpus, CORPUS_NAMES};
use crate::props::{self, Settings};
use crate::report::{CorpusSummary, Entry, Report, Totals};

#[derive(Parser, Debug)]
#[command(name = "snabs", version, about = "Decide S-n-absorbing ideals of finite commutative rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest ring order any construction may produce.
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    /// Per-instance time cap in seconds; 0 disables it.
    #[arg(long, default_value_t = 30.0, global = true)]
    pub time_cap: f64,
    /// Seed for the random corpus.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Absorbing verdicts for one ideal.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "mult(1)")]
        mult: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Least n for which the ideal is S-n-absorbing.
    Omega {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "mult(1)")]
        mult: String,
    },
    /// Omega of every proper ideal disjoint from S.
    OmegaTable {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "mult(1)")]
        mult: String,
    },
    /// The localization R_S as a quotient of R.
    Localize {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        mult: String,
        /// Also print the canonical map.
        #[arg(long)]
        tables: bool,
    },
    /// The amalgamation of A along HOM and the ideal J of its target.
    Amalg {
        a: String,
        hom: String,
        j: String,
        #[arg(long)]
        tables: bool,
    },
    /// Run proposition checkers over a corpus.
    Verify {
        /// Proposition ids, group ids, or slugs; repeatable. Defaults to all.
        #[arg(long)]
        prop: Vec<String>,
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Restrict the corpus to this single ring.
        #[arg(long)]
        ring: Option<String>,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// List the units of a named corpus.
    Corpus {
        #[arg(long, default_value = "default")]
        corpus: String,
    },
}

/// Exit code and the text destined for each stream.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = std::iter::once("snabs".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    if let Some(cap) = cli.max_order {
        set_order_cap(cap);
    }
    let report = match execute(&cli, command) {
        Ok(r) => r,
        Err(e) => return Output { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let body = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let code = if report.totals.failed > 0 { 1 } else { 0 };
    match &cli.out {
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => Output { code, ..Output::default() },
            Err(e) => Output { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
        },
        None => Output { code, stdout: body, stderr: String::new() },
    }
}

pub fn execute(cli: &Cli, command: String) -> Result<Report, Error> {
    let settings = Settings { cap: (cli.time_cap > 0.0).then(|| Duration::from_secs_f64(cli.time_cap)) };
    match &cli.command {
        Command::Classify { ring, ideal, mult, n } => classify(command, ring, ideal, mult, *n),
        Command::Omega { ring, ideal, mult } => {
            let r = dsl::parse_ring(ring)?;
            let (i, s) = (dsl::parse_ideal(ideal, &r)?, dsl::parse_mult(mult, &r)?);
            let w = omega(&i, &s)?;
            let entry = Entry::new("omega", w.value.to_string())
                .witness(w.witness_s.map(|x| render_element(&r, x)))
                .detail(format!("searched n <= {}", w.bound_used));
            Ok(Report::with_entries(command, vec![entry]))
        }
        Command::OmegaTable { ring, mult } => {
            let r = dsl::parse_ring(ring)?;
            let s = dsl::parse_mult(mult, &r)?;
            let table = omega_table(&IdealLattice::new(&r)?, &s)?;
            let mut entries: Vec<Entry> = table
                .entries
                .iter()
                .map(|(i, w)| Entry::new(format!("omega {}", render_ideal(i)), w.value.to_string()).witness(w.witness_s.map(|x| render_element(&r, x))))
                .collect();
            let values: Vec<String> = table.values.iter().map(|v| v.to_string()).collect();
            entries.push(Entry::new("Omega", format!("{{{}}}", values.join(", "))));
            Ok(Report::with_entries(command, entries))
        }
        Command::Localize { ring, mult, tables } => {
            let r = dsl::parse_ring(ring)?;
            let s = dsl::parse_mult(mult, &r)?;
            let loc = localize(&r, &s)?;
            let mut entries = summary_entries(&loc.ring)?;
            entries.push(Entry::new("kernel", render_ideal(&loc.kernel)));
            if *tables {
                entries.push(Entry::new("map", map_table(&r, &loc.ring, loc.map.table())));
            }
            Ok(Report::with_entries(command, entries))
        }
        Command::Amalg { a, hom, j, tables } => {
            let base = dsl::parse_ring(a)?;
            let f = dsl::parse_hom(hom, &base)?;
            let ideal = dsl::parse_ideal(j, f.target())?;
            let amal = amalgamate(&f, &ideal)?;
            let mut entries = summary_entries(&amal.ring)?;
            entries.push(Entry::new("f(A)+J order", amal.fj.order().to_string()));
            entries.push(Entry::new("ambient", render_ring(&amal.ambient)));
            if *tables {
                let pairs: Vec<String> = (0..amal.ring.order())
                    .map(|x| {
                        let (p, q) = amal.pair(x);
                        format!("{x}=({}, {})", render_element(&amal.a, p), render_element(&amal.b, q))
                    })
                    .collect();
                entries.push(Entry::new("elements", pairs.join(" ")));
            }
            Ok(Report::with_entries(command, entries))
        }
        Command::Verify { prop, corpus, ring, timings } => verify(command, prop, corpus, ring.as_deref(), cli.seed, &settings, *timings),
        Command::Corpus { corpus } => {
            let c = Corpus::named(corpus, cli.seed)?;
            let entries = c.rings.iter().map(|u| Entry::new("ring", u.text.clone()).detail(format!("order {}", u.ring.order()))).collect();
            let mut r = Report::with_entries(command, entries);
            r.corpus = Some(summary(&c));
            Ok(r)
        }
    }
}

fn classify(command: String, ring: &str, ideal: &str, mult: &str, n: usize) -> Result<Report, Error> {
    let r = dsl::parse_ring(ring)?;
    let (i, s) = (dsl::parse_ideal(ideal, &r)?, dsl::parse_mult(mult, &r)?);
    s.check_disjoint(&i)?;
    let render = |v: &Verdict| {
        let cx = v.counterexample.as_ref().filter(|c| !c.is_empty()).map(|c| c.iter().map(|&x| render_element(&r, x)).collect());
        (v.holds.to_string(), v.witness_s.map(|x| render_element(&r, x)), cx)
    };
    let entry = |name: String, v: &Verdict| {
        let (result, witness, cx) = render(v);
        Entry::new(name, result).witness(witness).counterexample(cx)
    };
    let variants = s_variant_predicates(&i, &s)?;
    let mut strongly = entry("strongly S-primary".into(), &variants.strongly_s_primary);
    if let (Some(t), Some(k)) = (variants.strongly_s_primary.witness_t, variants.strongly_s_primary.exponent) {
        strongly = strongly.detail(format!("t = {}, t sqrt(I)^{k} ⊆ I", render_element(&r, t)));
    }
    let entries = vec![
        entry(format!("{n}-absorbing"), &is_n_absorbing(&i, n)?),
        entry(format!("S-{n}-absorbing"), &is_s_n_absorbing(&i, &s, n)?),
        entry("S-prime".into(), &variants.s_prime),
        entry("S-primary".into(), &variants.s_primary),
        strongly,
    ];
    Ok(Report::with_entries(command, entries))
}

fn summary_entries(ring: &std::sync::Arc<FiniteRing>) -> Result<Vec<Entry>, Error> {
    let lattice = IdealLattice::new(ring)?;
    Ok(vec![
        Entry::new("ring", render_ring(ring)),
        Entry::new("order", ring.order().to_string()),
        Entry::new("units", ring.units().len().to_string()),
        Entry::new("ideals", lattice.ideals().len().to_string()),
    ])
}

fn map_table(source: &FiniteRing, target: &FiniteRing, table: &[usize]) -> String {
    table
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{} -> {}", render_element(source, x), render_element(target, y)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn summary(c: &Corpus) -> CorpusSummary {
    CorpusSummary {
        name: c.name.clone(),
        seed: c.seed,
        rings: c.rings.len(),
        amalgamations: c.amalgams.len(),
        products: c.products.len(),
        extensions: c.extensions.len(),
        surjections: c.homs.len(),
        excluded: c.excluded.clone(),
    }
}

pub fn verify(
    command: String,
    keys: &[String],
    corpus: &str,
    ring: Option<&str>,
    seed: u64,
    settings: &Settings,
    timings: bool,
) -> Result<Report, Error> {
    let start = Instant::now();
    let chosen = props::resolve(keys).map_err(Error::Semantic)?;
    if !CORPUS_NAMES.contains(&corpus) {
        return Err(Error::Semantic(format!("unknown corpus '{corpus}'; expected one of {}", CORPUS_NAMES.join(", "))));
    }
    let c = match ring {
        Some(text) => Corpus::restrict(corpus, seed, text)?,
        None => Corpus::named(corpus, seed)?,
    };
    let mut report = Report::new(command);
    report.corpus = Some(summary(&c));
    let mut totals = Totals::default();
    for p in chosen {
        let pr = props::run(p, &c, settings, timings);
        totals.run += pr.run;
        totals.passed += pr.passed;
        totals.failed += pr.failed;
        totals.skipped += pr.skipped;
        report.props.push(pr);
    }
    report.totals = totals;
    report.wall_ms = timings.then(|| start.elapsed().as_millis() as u64);
    Ok(report)
}
