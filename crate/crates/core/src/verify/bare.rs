//! The bare rule is not locally gauge invariant.
//!
//! For each initial row ψ(·,0) and initial transformation row φ(·,0) the
//! search tries to continue φ upward so that G_φψ stays valid. A flip row
//! that matches a given output row is unique when it exists, so the
//! continuation is forced and a failure rules out every compensation.

use std::time::Instant;

use super::{CheckReport, Counterexample};
use crate::dynamics::{is_r_valid, run, step_r, GaugeInput, GaugeRow, MatterRow};
use crate::error::Error;
use crate::io::scenario_free;
use crate::lattice::{PhiField, RingConfig};
use crate::symmetry::gauge_psi;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiRestriction {
    /// Every initial φ row.
    All,
    /// φ(·,0) ≡ 0 or φ(·,0) ≡ 1.
    Constant,
    /// φ(·,0) ≡ 0.
    Zero,
}

impl PhiRestriction {
    fn rows(self, width: usize) -> Vec<u64> {
        let ones = (1u64 << width) - 1;
        match self {
            PhiRestriction::All => (0..=ones).collect(),
            PhiRestriction::Constant => vec![0, ones],
            PhiRestriction::Zero => vec![0],
        }
    }
}

/// The search at width 4, horizon 2 over every initial φ row.
pub fn check_r_not_gauge_invariant() -> CheckReport {
    check_r_not_gauge_invariant_on(4, 2, PhiRestriction::All).expect("fixed instance is in range")
}

pub fn check_r_not_gauge_invariant_on(
    width: usize,
    horizon: usize,
    phis: PhiRestriction,
) -> Result<CheckReport, Error> {
    super::guard("bare-rule search", 3 * width, 24)?;
    let start = Instant::now();
    let mut report = CheckReport::new(format!("r-gauge-invariance (n={width}, t={horizon}, phi={phis:?})"));
    let zero = GaugeInput::Initial(GaugeRow::zeros(width)?);
    'search: for psi_index in 0..MatterRow::count(width) {
        let psi0 = MatterRow::from_index(width, psi_index)?;
        let psi = run(crate::dynamics::TheorySpec::FREE, &psi0, &zero, horizon)?.matter;
        for &phi_index in &phis.rows(width) {
            report.cases += 1;
            let mut phi_rows = vec![RingConfig::<bool>::from_index(width, phi_index)?];
            let mut current =
                RingConfig::from_fn(width, |x| psi.rows()[0].cells()[x].flipped_if(phi_rows[0].cells()[x]))?;
            let mut stuck = false;
            for t in 0..horizon {
                let next = step_r(&current);
                let target = &psi.rows()[t + 1];
                let mut row = Vec::with_capacity(width);
                for x in 0..width {
                    let (want, have) = (next.cells()[x], target.cells()[x]);
                    if want == have {
                        row.push(false);
                    } else if want == have.flipped() {
                        row.push(true);
                    } else {
                        stuck = true;
                        row.push(false);
                    }
                }
                phi_rows.push(RingConfig::new(row)?);
                if stuck {
                    break;
                }
                current = next;
            }
            if stuck {
                while phi_rows.len() < horizon + 2 {
                    phi_rows.push(RingConfig::zeros(width)?);
                }
                let phi = PhiField::new(phi_rows)?;
                let violation = is_r_valid(&gauge_psi(&psi, &phi)?).expect_err("forced flip row cannot match");
                report = report
                    .fail(Counterexample::Diagram {
                        scenario: scenario_free(psi0, horizon, phi),
                        violation,
                    })
                    .note(format!(
                        "no flip row at t={} makes the transformed diagram valid",
                        violation.t
                    ));
                break 'search;
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
