use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Outcome of a decision procedure.
///
/// A true verdict for an existential predicate carries the witness; a false
/// verdict carries a counterexample that can be replayed against the
/// definition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness_s: Option<usize>,
    /// Every valid witness, ascending, when the caller asked for all of them.
    pub witnesses: Vec<usize>,
    /// Second witness and exponent for strongly S-primary: `t (sqrt I)^n ⊆ I`.
    pub witness_t: Option<usize>,
    pub exponent: Option<usize>,
    pub counterexample: Option<Vec<usize>>,
    pub tuples_examined: u64,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn yes(witness: Option<usize>) -> Verdict {
        Verdict { holds: true, witness_s: witness, ..Verdict::default() }
    }

    pub fn no(counterexample: Vec<usize>) -> Verdict {
        Verdict { holds: false, counterexample: Some(counterexample), ..Verdict::default() }
    }

    pub(crate) fn timed(mut self, start: Instant) -> Verdict {
        self.elapsed = start.elapsed();
        self
    }
}

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Runs `f` with a wall-clock cap; searches started inside return
/// [`Error::Timeout`] once it passes.
pub fn with_time_cap<T>(cap: Option<Duration>, f: impl FnOnce() -> T) -> T {
    let previous = DEADLINE.with(|d| d.replace(cap.map(|c| Instant::now() + c)));
    let out = f();
    DEADLINE.with(|d| d.set(previous));
    out
}

pub(crate) fn check_deadline() -> Result<()> {
    match DEADLINE.with(|d| d.get()) {
        Some(deadline) if Instant::now() > deadline => Err(Error::Timeout),
        _ => Ok(()),
    }
}

/// One clause of a theorem checked on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub clause: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(clause: &'static str, passed: bool, detail: impl Into<String>) -> Check {
        Check { clause, passed, detail: detail.into() }
    }
}
