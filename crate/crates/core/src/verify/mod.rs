//! Exhaustive (and, separately, seeded random) checks of the gauge
//! invariance properties on small rings.
//!
//! Every check returns a [`CheckReport`]. A `FAILS` verdict always carries a
//! [`Counterexample`] whose [`Counterexample::replay`] reproduces the
//! violation. Sweeps may run in parallel, but cases are aggregated in a
//! fixed order so reports are identical from run to run.

mod admissible;
mod bare;
mod local;
mod remark;
mod soundness;

use std::fmt::{self, Write};
use std::time::Duration;

pub use admissible::{enumerate_admissible_phi, AdmissibleSet};
pub use bare::{check_r_not_gauge_invariant, check_r_not_gauge_invariant_on, PhiRestriction};
pub use local::{check_local_covariance_r_a, check_local_covariance_with, LocalCase};
pub use remark::{check_equivalence_classes, check_remark1};
pub use soundness::{check_gauge_fixing_soundness, induced_curvatures};

use crate::dynamics::{is_r_valid, is_valid, GaugeDiagram, MatterDiagram, MatterRow, SRule, TheorySpec, Violation};
use crate::error::Error;
use crate::io::{serialize, Scenario, Serialized};
use crate::lattice::{Cell, SpacetimeDiagram};
use crate::symmetry::{gauge_joint, gauge_psi, GaugeLaw};

/// Samples drawn by [`SearchMode::sampled`].
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// How a check walks its case space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    /// Uniform random cases from a fixed seed.
    Sampled {
        seed: u64,
        samples: u64,
    },
}

impl SearchMode {
    pub fn sampled(seed: u64) -> Self {
        SearchMode::Sampled {
            seed,
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    HoldsOnSubset,
}

impl Verdict {
    pub fn passed(self) -> bool {
        !matches!(self, Verdict::Fails)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::HoldsOnSubset => "HOLDS_ON_SUBSET",
        })
    }
}

/// A concrete, replayable reason for a `FAILS` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// One gate input where the dressed-gate covariance identity breaks.
    LocalGate { case: LocalCase, law: GaugeLaw },
    /// A scenario whose φ-transformed diagram is not valid; `violation` is
    /// what `is_valid` reports on it.
    Diagram { scenario: Scenario, violation: Violation },
    /// Two gauge diagrams on which the brute-force search, the curvature
    /// criterion and the solver do not all agree.
    GaugePair {
        a: GaugeDiagram,
        a_prime: GaugeDiagram,
        oracle: bool,
        criterion: bool,
        solver: bool,
    },
    /// Two matter diagrams on which G-relatedness and equality of J disagree.
    MatterPair {
        d: MatterDiagram,
        d_prime: MatterDiagram,
        related: bool,
        same_j: bool,
    },
    /// An initial condition of `from` with no φ making it valid under `to`,
    /// or whose matched diagram has a different J.
    GaugeFixing {
        from: SRule,
        to: SRule,
        psi0: MatterRow,
        a0: crate::dynamics::GaugeRow,
        horizon: usize,
        reason: String,
    },
}

fn bits(out: &mut String, key: &str, value: bool) {
    let _ = writeln!(out, "{key}={}", value as u8);
}

fn block<C: Cell>(
    out: &mut String,
    key: &str,
    d: &SpacetimeDiagram<C>,
    serial: impl Fn(SpacetimeDiagram<C>) -> Serialized,
) {
    let _ = writeln!(out, "{key}:");
    for line in serialize(&serial(d.clone())).lines() {
        let _ = writeln!(out, "  {line}");
    }
}

impl Counterexample {
    /// Plain-text form; scenario-backed counterexamples are a scenario file.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Counterexample::LocalGate { case, law } => {
                bits(&mut out, "plus_in", case.plus_in);
                bits(&mut out, "minus_in", case.minus_in);
                bits(&mut out, "a_r", case.a.r);
                bits(&mut out, "a_l", case.a.l);
                bits(&mut out, "phi_left", case.phi_left);
                bits(&mut out, "phi_right", case.phi_right);
                bits(&mut out, "phi_out", case.phi_out);
                if *law != GaugeLaw::EXACT {
                    let _ = writeln!(
                        out,
                        "law=r_output:{} r_input:{} l_output:{} l_input:{}",
                        law.r_output as u8, law.r_input as u8, law.l_output as u8, law.l_input as u8
                    );
                }
            }
            Counterexample::Diagram { scenario, violation } => {
                out.push_str(&scenario.to_text());
                let _ = writeln!(out, "# violation: {violation}");
            }
            Counterexample::GaugePair {
                a,
                a_prime,
                oracle,
                criterion,
                solver,
            } => {
                block(&mut out, "a", a, Serialized::Gauge);
                block(&mut out, "a_prime", a_prime, Serialized::Gauge);
                let _ = writeln!(
                    out,
                    "phi_exists={oracle} curvature_and_holonomy={criterion} solver={solver}"
                );
            }
            Counterexample::MatterPair {
                d,
                d_prime,
                related,
                same_j,
            } => {
                block(&mut out, "d", d, Serialized::Matter);
                block(&mut out, "d_prime", d_prime, Serialized::Matter);
                let _ = writeln!(out, "related={related} same_j={same_j}");
            }
            Counterexample::GaugeFixing {
                from,
                to,
                psi0,
                a0,
                horizon,
                reason,
            } => {
                let _ = writeln!(out, "from={from} to={to} T={horizon}");
                out.push_str("psi0=");
                crate::io::write_row(psi0, &mut out);
                out.push_str("\na0=");
                crate::io::write_row(a0, &mut out);
                out.push('\n');
                let _ = writeln!(out, "reason={reason}");
            }
        }
        out
    }

    /// Re-runs the failing case; `Ok(true)` if the failure reproduces.
    pub fn replay(&self) -> Result<bool, Error> {
        match self {
            Counterexample::LocalGate { case, law } => Ok(!case.holds(*law)),
            Counterexample::Diagram { scenario, violation } => {
                let phi = scenario
                    .phi_field()?
                    .ok_or_else(|| Error::Precondition("counterexample scenario has no phi".into()))?;
                let c = scenario.run()?;
                let found = if scenario.spec == TheorySpec::FREE {
                    is_r_valid(&gauge_psi(&c.matter, &phi)?)
                } else {
                    is_valid(scenario.spec, &gauge_joint(&c, &phi)?)
                };
                Ok(found == Err(*violation))
            }
            Counterexample::GaugePair {
                a,
                a_prime,
                oracle,
                criterion,
                solver,
            } => {
                let (o, c, s) = remark::classify_pair(a, a_prime)?;
                Ok((o, c, s) == (*oracle, *criterion, *solver) && !(o == c && c == s))
            }
            Counterexample::MatterPair { d, d_prime, .. } => {
                let (related, same_j) = remark::classify_matter_pair(d, d_prime)?;
                Ok(related != same_j)
            }
            Counterexample::GaugeFixing {
                from,
                to,
                psi0,
                a0,
                horizon,
                ..
            } => Ok(soundness::match_case(*from, *to, psi0, a0, *horizon)?.is_err()),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub cases: u64,
    pub witness: Option<Counterexample>,
    /// Description of the admissible subset for `HOLDS_ON_SUBSET`.
    pub subset: Option<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl PartialEq for CheckReport {
    /// Timing is excluded: equal reports render identically.
    fn eq(&self, other: &Self) -> bool {
        self.render() == other.render()
    }
}

impl CheckReport {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            verdict: Verdict::Holds,
            cases: 0,
            witness: None,
            subset: None,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn fail(mut self, witness: Counterexample) -> Self {
        self.verdict = Verdict::Fails;
        self.witness = Some(witness);
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Deterministic text form (timing is not included).
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "check: {}", self.name);
        let _ = writeln!(out, "verdict: {}", self.verdict);
        let _ = writeln!(out, "cases: {}", self.cases);
        if let Some(subset) = &self.subset {
            let _ = writeln!(out, "subset: {subset}");
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        if let Some(w) = &self.witness {
            out.push_str("counterexample:\n");
            for line in w.to_text().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

/// Checks the φ-space and pair-space sizes of an exhaustive sweep.
pub(crate) fn guard(what: &str, log2_size: usize, limit: usize) -> Result<(), Error> {
    if log2_size > limit {
        return Err(Error::InstanceTooLarge(format!(
            "{what} needs 2^{log2_size} cases, limit is 2^{limit}"
        )));
    }
    Ok(())
}
