//! Per-instance bookkeeping: memoized decision calls, time caps, and the
//! tallies that become a report.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use snabs_core::classify::{is_n_absorbing, is_s_n_absorbing};
use snabs_core::dsl::{render_ideal, render_multset, render_ring};
use snabs_core::{with_time_cap, Check, ElemSet, Error, FiniteRing, Ideal, MultSet, Result};

use crate::report::Failure;

/// Failures kept verbatim per proposition; the rest are only counted.
pub const FAILURE_SAMPLE: usize = 25;

/// Memoizes absorbing verdicts by ring identity and member sets. Rings are
/// kept alive so their addresses stay unique while cached.
#[derive(Default)]
pub struct Memo {
    rings: HashMap<usize, Arc<FiniteRing>>,
    s_abs: HashMap<(usize, ElemSet, ElemSet, usize), bool>,
    abs: HashMap<(usize, ElemSet, usize), bool>,
}

impl Memo {
    fn key(&mut self, ring: &Arc<FiniteRing>) -> usize {
        let k = Arc::as_ptr(ring) as usize;
        self.rings.entry(k).or_insert_with(|| ring.clone());
        k
    }

    pub fn s_abs(&mut self, ideal: &Ideal, set: &MultSet, n: usize) -> Result<bool> {
        let key = (self.key(ideal.ring()), set.members().clone(), ideal.members().clone(), n);
        if let Some(&v) = self.s_abs.get(&key) {
            return Ok(v);
        }
        let v = is_s_n_absorbing(ideal, set, n)?.holds;
        self.s_abs.insert(key, v);
        Ok(v)
    }

    pub fn abs(&mut self, ideal: &Ideal, n: usize) -> Result<bool> {
        let key = (self.key(ideal.ring()), ideal.members().clone(), n);
        if let Some(&v) = self.abs.get(&key) {
            return Ok(v);
        }
        let v = is_n_absorbing(ideal, n)?.holds;
        self.abs.insert(key, v);
        Ok(v)
    }

    /// Least `n` with `ideal` S-n-absorbing, searched up to the
    /// `floor(log2 |R|)` bound.
    pub fn omega_s(&mut self, ideal: &Ideal, set: &MultSet) -> Result<usize> {
        set.check_disjoint(ideal)?;
        let bound = ideal.ring().log2_bound().max(1);
        for n in 1..=bound {
            if self.s_abs(ideal, set, n)? {
                return Ok(n);
            }
        }
        Err(Error::Internal(format!("omega exceeds the termination bound {bound}")))
    }

    /// Least `n` with `ideal` n-absorbing.
    pub fn omega(&mut self, ideal: &Ideal) -> Result<usize> {
        let bound = ideal.ring().log2_bound().max(1);
        for n in 1..=bound {
            if self.abs(ideal, n)? {
                return Ok(n);
            }
        }
        Err(Error::Internal(format!("omega exceeds the termination bound {bound}")))
    }
}

pub enum Outcome {
    Checks(Vec<Check>),
    Skip(String),
}

pub fn skip(reason: &str) -> Result<Outcome> {
    Ok(Outcome::Skip(reason.to_string()))
}

pub fn checks(list: Vec<Check>) -> Result<Outcome> {
    Ok(Outcome::Checks(list))
}

pub fn check(clause: &'static str, passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Checks(vec![Check::new(clause, passed, detail)]))
}

/// Where a failure happened and how to look at it again.
pub struct Instance {
    pub key: String,
    pub replay: String,
}

impl Instance {
    /// An instance centred on `(ring, ideal, set, n)`; the replay runs the
    /// classifier on exactly that data.
    pub fn classify(ideal: &Ideal, set: &MultSet, n: usize, extra: &str) -> Instance {
        let ring = render_ring(ideal.ring());
        let (i, s) = (render_ideal(ideal), render_multset(set));
        let mut key = format!("{ring}; S={s}; I={i}; n={n}");
        if !extra.is_empty() {
            key.push_str("; ");
            key.push_str(extra);
        }
        Instance { key, replay: format!("snabs classify --ring '{ring}' --ideal '{i}' --mult '{s}' --n {n}") }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub run: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub skip_reasons: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl Tally {
    /// Runs one instance under the time cap. Precondition errors and
    /// timeouts count as skips; any other error is a failure.
    pub fn instance(&mut self, cap: Option<Duration>, describe: impl FnOnce() -> Instance, body: impl FnOnce() -> Result<Outcome>) {
        self.run += 1;
        match with_time_cap(cap, body) {
            Ok(Outcome::Skip(reason)) => self.skip(reason),
            Ok(Outcome::Checks(list)) if list.is_empty() => self.skip("no clause applies".into()),
            Ok(Outcome::Checks(list)) => match list.iter().find(|c| !c.passed) {
                None => self.passed += 1,
                Some(bad) => self.fail(describe(), bad.clause, bad.detail.clone()),
            },
            Err(Error::Timeout) => self.skip("time cap exceeded".into()),
            Err(Error::Precondition(msg)) => self.skip(format!("precondition: {msg}")),
            Err(e) => self.fail(describe(), "error", e.to_string()),
        }
    }

    fn skip(&mut self, reason: String) {
        self.skipped += 1;
        *self.skip_reasons.entry(reason).or_default() += 1;
    }

    fn fail(&mut self, instance: Instance, clause: &str, detail: String) {
        self.failed += 1;
        if self.failures.len() < FAILURE_SAMPLE {
            self.failures.push(Failure { instance: instance.key, clause: clause.to_string(), detail, replay: instance.replay });
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.run += other.run;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        for (k, v) in other.skip_reasons {
            *self.skip_reasons.entry(k).or_default() += v;
        }
        for f in other.failures {
            if self.failures.len() < FAILURE_SAMPLE {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
        self
    }
}

/// Runs `body` on every unit in parallel and merges the tallies in unit
/// order, so the result does not depend on scheduling.
pub fn over<U: Sync>(units: &[U], body: impl Fn(&U, &mut Tally) + Sync) -> Tally {
    units
        .par_iter()
        .map(|u| {
            let mut t = Tally::default();
            body(u, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}
