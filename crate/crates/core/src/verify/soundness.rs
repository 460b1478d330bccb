//! Two gauge rules that generate the same curvature dynamics give
//! physically equivalent theories.
//!
//! For each initial condition of one theory, the other theory's runs are
//! searched for a gauge field related to this one by some φ. The matched
//! diagram must be valid under the other theory, reproduce itself from its
//! own first row, and carry the same J field.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{guard, CheckReport, Counterexample, SearchMode};
use crate::dynamics::{is_valid, run, GaugeInput, GaugeRow, MatterRow, SRule, TheorySpec};
use crate::error::Error;
use crate::lattice::PhiField;
use crate::symmetry::{compute_f, compute_j, gauge_joint, solve_gauge};

/// Initial conditions up to 2^20 per direction.
const INITIAL_LIMIT: usize = 20;

/// Distinct F fields (as indices) generated by `rule` from every initial
/// gauge row at this width and horizon.
pub fn induced_curvatures(rule: SRule, width: usize, horizon: usize) -> Result<BTreeSet<u64>, Error> {
    guard("initial gauge rows", 2 * width, INITIAL_LIMIT)?;
    let zero = MatterRow::zeros(width)?;
    let mut out = BTreeSet::new();
    for i in 0..GaugeRow::count(width) {
        let c = run(
            TheorySpec::gauged(rule),
            &zero,
            &GaugeInput::Initial(GaugeRow::from_index(width, i)?),
            horizon,
        )?;
        out.insert(compute_f(&c.gauge)?.to_index());
    }
    Ok(out)
}

/// Matches the `from` run of `(psi0, a0)` to a `to` run. Returns the φ used,
/// or the reason no match exists.
pub(crate) fn match_case(
    from: SRule,
    to: SRule,
    psi0: &MatterRow,
    a0: &GaugeRow,
    horizon: usize,
) -> Result<Result<PhiField, String>, Error> {
    let width = psi0.width();
    let (t_from, t_to) = (TheorySpec::gauged(from), TheorySpec::gauged(to));
    let c = run(t_from, psi0, &GaugeInput::Initial(a0.clone()), horizon)?;
    let j = compute_j(&c.matter);
    // The unchanged initial row is the likeliest partner; try it first.
    let candidates = std::iter::once(a0.to_index()).chain((0..GaugeRow::count(width)).filter(|&i| i != a0.to_index()));
    for index in candidates {
        let b0 = GaugeRow::from_index(width, index)?;
        let target = run(t_to, psi0, &GaugeInput::Initial(b0), horizon)?.gauge;
        let phi = match solve_gauge(&c.gauge, &target, None)? {
            Ok(phi) => phi,
            Err(_) => continue,
        };
        let matched = gauge_joint(&c, &phi)?;
        if let Err(v) = is_valid(t_to, &matched) {
            return Ok(Err(format!("matched diagram is not {t_to}-valid: {v}")));
        }
        let rerun = run(
            t_to,
            &matched.matter.rows()[0],
            &GaugeInput::Initial(matched.gauge.rows()[0].clone()),
            horizon,
        )?;
        if rerun != matched {
            return Ok(Err(format!("matched diagram is not the {t_to} run of its first row")));
        }
        if compute_j(&matched.matter) != j {
            return Ok(Err("matched diagram has a different J field".into()));
        }
        return Ok(Ok(phi));
    }
    Ok(Err(format!("no {t_to} gauge field is related to the {t_from} one")))
}

/// Checks both directions between `s1` and `s2` over every initial
/// condition (or a seeded sample of them).
///
/// Fails with [`Error::Precondition`] when the rules generate different
/// sets of F fields, or when either rule is `none`.
pub fn check_gauge_fixing_soundness(
    s1: SRule,
    s2: SRule,
    width: usize,
    horizon: usize,
    mode: SearchMode,
) -> Result<CheckReport, Error> {
    if s1 == SRule::None || s2 == SRule::None {
        return Err(Error::Precondition(
            "gauge fixing compares two gauge dynamics; `none` has none".into(),
        ));
    }
    let start = Instant::now();
    if horizon > 0 && induced_curvatures(s1, width, horizon)? != induced_curvatures(s2, width, horizon)? {
        return Err(Error::Precondition(format!(
            "{s1} and {s2} induce different curvature dynamics at n={width}, t={horizon}"
        )));
    }
    let cases: Vec<(u64, u64)> = match mode {
        SearchMode::Exhaustive => {
            guard("initial conditions", 4 * width, INITIAL_LIMIT)?;
            let rows = GaugeRow::count(width);
            (0..MatterRow::count(width))
                .flat_map(|p| (0..rows).map(move |a| (p, a)))
                .collect()
        }
        SearchMode::Sampled { seed, samples } => {
            if 2 * width > 64 {
                return Err(Error::InstanceTooLarge(format!("rows of width {width}")));
            }
            let mask = if width >= 32 {
                u64::MAX
            } else {
                (1u64 << (2 * width)) - 1
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| (rng.gen::<u64>() & mask, rng.gen::<u64>() & mask))
                .collect()
        }
    };
    let label = match mode {
        SearchMode::Exhaustive => String::new(),
        SearchMode::Sampled { seed, .. } => format!(", sampled seed={seed}"),
    };
    let mut report = CheckReport::new(format!("gauge-fixing {s1} vs {s2} (n={width}, t={horizon}{label})"));
    let mut trivial = 0u64;
    for (from, to) in [(s1, s2), (s2, s1)] {
        let results: Vec<Result<Result<PhiField, String>, Error>> = cases
            .par_iter()
            .map(|&(p, a)| {
                match_case(
                    from,
                    to,
                    &MatterRow::from_index(width, p)?,
                    &GaugeRow::from_index(width, a)?,
                    horizon,
                )
            })
            .collect();
        for (&(p, a), r) in cases.iter().zip(results) {
            report.cases += 1;
            match r? {
                Ok(phi) => trivial += phi.is_zero() as u64,
                Err(reason) => {
                    return Ok(report.fail(Counterexample::GaugeFixing {
                        from,
                        to,
                        psi0: MatterRow::from_index(width, p)?,
                        a0: GaugeRow::from_index(width, a)?,
                        horizon,
                        reason,
                    }))
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report
        .note("every matched pair has equal J fields")
        .note(format!("{trivial} cases matched with phi = 0")))
}
