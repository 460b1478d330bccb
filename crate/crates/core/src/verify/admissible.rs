//! Which φ fields map every valid diagram of a theory to a valid diagram.
//!
//! The theory's valid diagrams are generated from all initial data (and,
//! for the `none` gauge rule, all external gauge diagrams), so the result
//! is an exact description of the admissible set at this size.

use std::time::Instant;

use rayon::prelude::*;

use super::{guard, CheckReport, Counterexample};
use crate::dynamics::{
    is_r_valid, is_valid, run, GaugeDiagram, GaugeInput, GaugeRow, JointDiagram, MatterRow, MatterRule, SRule,
    TheorySpec, Violation,
};
use crate::error::Error;
use crate::io::{PhiSource, Scenario};
use crate::lattice::PhiField;
use crate::symmetry::{gauge_joint, gauge_psi};

/// φ fields times valid diagrams, up to 2^24.
const SWEEP_LIMIT: usize = 24;

/// The admissible φ fields of one theory at one size, as field indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub width: usize,
    /// Horizon of the φ fields (the diagram horizon, plus one for gauged
    /// theories).
    pub phi_horizon: usize,
    pub total: u64,
    pub members: Vec<u64>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.members.len() as u64 == self.total
    }

    pub fn contains(&self, phi: &PhiField) -> bool {
        phi.width() == self.width
            && phi.horizon() == self.phi_horizon
            && self.members.binary_search(&phi.to_index()).is_ok()
    }

    pub fn fields(&self) -> impl Iterator<Item = PhiField> + '_ {
        self.members
            .iter()
            .map(|&i| PhiField::from_index(self.width, self.phi_horizon, i).expect("shape fixed"))
    }

    /// Counts members by shape: constant, uniform on every row, or neither.
    pub fn describe(&self) -> String {
        let (mut constant, mut uniform) = (0, 0);
        for phi in self.fields() {
            let rows_uniform = phi.rows().iter().all(|r| r.cells().iter().all(|&b| b == r.cells()[0]));
            let all_same = rows_uniform && phi.rows().iter().all(|r| r.cells()[0] == phi.rows()[0].cells()[0]);
            constant += all_same as usize;
            uniform += (rows_uniform && !all_same) as usize;
        }
        format!(
            "{} of {} phi fields: {} constant, {} uniform on each row, {} other",
            self.len(),
            self.total,
            constant,
            uniform,
            self.len() - constant - uniform
        )
    }
}

fn valid_diagrams(spec: TheorySpec, width: usize, horizon: usize) -> Result<Vec<(JointDiagram, GaugeInput)>, Error> {
    let mut out = Vec::new();
    for p in 0..MatterRow::count(width) {
        let psi0 = MatterRow::from_index(width, p)?;
        let inputs: Vec<GaugeInput> = match (spec.matter_rule(), spec.gauge_rule()) {
            (MatterRule::Free, _) => vec![GaugeInput::Initial(GaugeRow::zeros(width)?)],
            (_, SRule::None) => (0..1u64 << GaugeDiagram::bit_len(width, horizon))
                .map(|i| GaugeDiagram::from_index(width, horizon, i).map(GaugeInput::External))
                .collect::<Result<_, _>>()?,
            _ => (0..GaugeRow::count(width))
                .map(|i| GaugeRow::from_index(width, i).map(GaugeInput::Initial))
                .collect::<Result<_, _>>()?,
        };
        for input in inputs {
            out.push((run(spec, &psi0, &input, horizon)?, input));
        }
    }
    Ok(out)
}

fn transformed_violation(spec: TheorySpec, c: &JointDiagram, phi: &PhiField) -> Result<Option<Violation>, Error> {
    Ok(if spec == TheorySpec::FREE {
        is_r_valid(&gauge_psi(&c.matter, phi)?).err()
    } else {
        is_valid(spec, &gauge_joint(c, phi)?).err()
    })
}

/// Enumerates all φ on the theory's φ shape and keeps those that preserve
/// validity of every valid diagram.
///
/// For the gauged rule with no gauge dynamics every φ must qualify, so the
/// verdict is `FAILS` otherwise. Other theories report `HOLDS` when every φ
/// qualifies and `HOLDS_ON_SUBSET` with a description of the set when not.
pub fn enumerate_admissible_phi(
    spec: TheorySpec,
    width: usize,
    horizon: usize,
) -> Result<(AdmissibleSet, CheckReport), Error> {
    if width < 2 {
        return Err(Error::WidthTooSmall(width));
    }
    let start = Instant::now();
    let phi_horizon = if spec == TheorySpec::FREE { horizon } else { horizon + 1 };
    let phi_bits = PhiField::bit_len(width, phi_horizon);
    let diagram_bits = match (spec.matter_rule(), spec.gauge_rule()) {
        (MatterRule::Free, _) => 2 * width,
        (_, SRule::None) => 2 * width + GaugeDiagram::bit_len(width, horizon),
        _ => 4 * width,
    };
    guard("admissible-phi sweep", phi_bits + diagram_bits, SWEEP_LIMIT)?;
    let diagrams = valid_diagrams(spec, width, horizon)?;
    let total = 1u64 << phi_bits;

    let verdicts: Vec<Result<Option<(usize, Violation)>, Error>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let phi = PhiField::from_index(width, phi_horizon, i)?;
            for (k, (c, _)) in diagrams.iter().enumerate() {
                if let Some(v) = transformed_violation(spec, c, &phi)? {
                    return Ok(Some((k, v)));
                }
            }
            Ok(None)
        })
        .collect();

    let mut members = Vec::new();
    let mut first_rejection = None;
    for (i, v) in verdicts.into_iter().enumerate() {
        match v? {
            None => members.push(i as u64),
            Some(hit) if first_rejection.is_none() => first_rejection = Some((i as u64, hit)),
            Some(_) => {}
        }
    }
    let set = AdmissibleSet {
        width,
        phi_horizon,
        total,
        members,
    };
    let mut report = CheckReport::new(format!("admissible-phi {spec} (n={width}, t={horizon})"));
    report.cases = total * diagrams.len() as u64;
    let needs_all = spec.matter_rule() == MatterRule::Gauged && spec.gauge_rule() == SRule::None;
    if let Some((i, (k, violation))) = first_rejection {
        if needs_all {
            let (c, input) = &diagrams[k];
            let scenario = Scenario {
                width,
                horizon,
                spec,
                psi0: c.matter.rows()[0].clone(),
                gauge: input.clone(),
                phi: Some(PhiSource::Rows(PhiField::from_index(width, phi_horizon, i)?)),
                solve_seed: None,
            };
            report = report.fail(Counterexample::Diagram { scenario, violation });
        } else {
            report.verdict = super::Verdict::HoldsOnSubset;
            report.subset = Some(set.describe());
        }
    }
    report.elapsed = start.elapsed();
    Ok((set, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn gauged_without_dynamics_admits_everything() {
        let (set, report) = enumerate_admissible_phi(TheorySpec::gauged(SRule::None), 2, 1).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!((set.len(), set.total), (64, 64));
    }

    #[test]
    fn constants_are_always_admissible() {
        for rule in [SRule::Advect, SRule::AdvectFlip, SRule::Frozen] {
            for n in [2, 3] {
                let (set, report) = enumerate_admissible_phi(TheorySpec::gauged(rule), n, 1).unwrap();
                assert!(report.verdict.passed());
                for value in [false, true] {
                    assert!(set.contains(&PhiField::constant(n, 2, value).unwrap()), "{rule} n={n}");
                }
            }
        }
    }

    #[test]
    fn bare_rule_rejects_space_dependent_flips() {
        let (set, report) = enumerate_admissible_phi(TheorySpec::FREE, 4, 2).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsOnSubset);
        assert!(!set.contains(&PhiField::single_site(4, 2, 1, 1).unwrap()));
        assert!(set.contains(&PhiField::constant(4, 2, true).unwrap()));
        assert!(report.subset.unwrap().contains("2 constant"));
    }

    #[test]
    fn every_member_really_is_admissible() {
        let spec = TheorySpec::gauged(SRule::Advect);
        let (set, _) = enumerate_admissible_phi(spec, 2, 1).unwrap();
        let diagrams = valid_diagrams(spec, 2, 1).unwrap();
        for i in 0..set.total {
            let phi = PhiField::from_index(2, 2, i).unwrap();
            let ok = diagrams
                .iter()
                .all(|(c, _)| is_valid(spec, &gauge_joint(c, &phi).unwrap()).is_ok());
            assert_eq!(ok, set.contains(&phi));
        }
    }

    #[test]
    fn oversized_sweeps_are_refused() {
        assert!(matches!(
            enumerate_admissible_phi(TheorySpec::gauged(SRule::Advect), 4, 2),
            Err(Error::InstanceTooLarge(_))
        ));
    }
}
