//! `F` is a complete gauge invariant of the gauge field (up to ring
//! holonomy), and `J` is a complete invariant of the matter field.
//!
//! Both checks compare against brute force: for every diagram, the full
//! set of its φ-images is enumerated, so no property of the transformation
//! law is assumed.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{guard, CheckReport, Counterexample, SearchMode};
use crate::dynamics::{GaugeDiagram, MatterDiagram};
use crate::error::Error;
use crate::lattice::{MatterCell, PhiField, RingConfig, SpacetimeDiagram};
use crate::symmetry::{compute_f, compute_j, curvature_mismatch, gauge_a, gauge_psi, holonomy_closes, solve_gauge};

/// Diagram indices up to 2^20 (the per-diagram limit).
const DIAGRAM_LIMIT: usize = 20;
/// Pair sweeps up to 2^24 pairs.
const PAIR_LIMIT: usize = 24;
/// Brute-force φ searches up to 2^16 fields per diagram.
const PHI_LIMIT: usize = 16;

fn phi_bits(width: usize, horizon: usize) -> usize {
    width * (horizon + 2)
}

/// `(φ exists, F = F' and holonomy closes, solver returns a correct φ)`,
/// the first by exhaustive search over φ.
pub(crate) fn classify_pair(a: &GaugeDiagram, a_prime: &GaugeDiagram) -> Result<(bool, bool, bool), Error> {
    let (n, t) = (a.width(), a.horizon());
    guard("phi search", phi_bits(n, t), PHI_LIMIT)?;
    let mut oracle = false;
    for p in 0..1u64 << phi_bits(n, t) {
        if gauge_a(a, &PhiField::from_index(n, t + 1, p)?)? == *a_prime {
            oracle = true;
            break;
        }
    }
    let criterion = curvature_mismatch(a, a_prime)?.is_none() && holonomy_closes(a, a_prime)?;
    Ok((oracle, criterion, solver_verdict(a, a_prime)?))
}

fn solver_verdict(a: &GaugeDiagram, a_prime: &GaugeDiagram) -> Result<bool, Error> {
    Ok(match solve_gauge(a, a_prime, None)? {
        Ok(phi) => gauge_a(a, &phi)? == *a_prime,
        Err(_) => false,
    })
}

#[derive(Clone, Copy, Default)]
struct Tally {
    related: u64,
    curvature: u64,
    holonomy: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            related: self.related + o.related,
            curvature: self.curvature + o.curvature,
            holonomy: self.holonomy + o.holonomy,
        }
    }
}

/// Compares, over pairs of gauge diagrams of width `width` and horizon
/// `horizon`, brute-force existence of φ against `F = F'` plus holonomy
/// closure, and against `solve_gauge`.
pub fn check_remark1(width: usize, horizon: usize, mode: SearchMode) -> Result<CheckReport, Error> {
    let start = Instant::now();
    let k = SpacetimeDiagram::<crate::lattice::GaugeCell>::bit_len(width, horizon);
    if width < 2 {
        return Err(Error::WidthTooSmall(width));
    }
    let mut report = match mode {
        SearchMode::Exhaustive => exhaustive_remark1(width, horizon, k)?,
        SearchMode::Sampled { seed, samples } => sampled_remark1(width, horizon, k, seed, samples)?,
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

fn exhaustive_remark1(width: usize, horizon: usize, k: usize) -> Result<CheckReport, Error> {
    guard("gauge diagrams", k, DIAGRAM_LIMIT)?;
    guard("gauge diagram pairs", 2 * k, PAIR_LIMIT)?;
    guard("phi search", phi_bits(width, horizon), PHI_LIMIT)?;
    let mut report = CheckReport::new(format!("remark1 (n={width}, t={horizon})"));
    let count = 1u64 << k;
    let diagrams = (0..count)
        .map(|i| GaugeDiagram::from_index(width, horizon, i))
        .collect::<Result<Vec<_>, _>>()?;
    let curvature: Vec<Option<u64>> = diagrams
        .iter()
        .map(|d| compute_f(d).ok().map(|f| f.to_index()))
        .collect();
    let phis = (0..1u64 << phi_bits(width, horizon))
        .map(|p| PhiField::from_index(width, horizon + 1, p))
        .collect::<Result<Vec<_>, _>>()?;

    let per_a: Vec<Result<(Tally, Option<Counterexample>), Error>> = diagrams
        .par_iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut reachable = vec![false; count as usize];
            for phi in &phis {
                reachable[gauge_a(a, phi)?.to_index() as usize] = true;
            }
            let mut tally = Tally::default();
            for (bi, b) in diagrams.iter().enumerate() {
                let oracle = reachable[bi];
                let same_f = curvature[ai] == curvature[bi];
                let closes = holonomy_closes(a, b)?;
                let criterion = same_f && closes;
                let solver = solver_verdict(a, b)?;
                tally.related += oracle as u64;
                tally.curvature += !same_f as u64;
                tally.holonomy += (same_f && !closes) as u64;
                if oracle != criterion || oracle != solver {
                    let witness = Counterexample::GaugePair {
                        a: a.clone(),
                        a_prime: b.clone(),
                        oracle,
                        criterion,
                        solver,
                    };
                    return Ok((tally, Some(witness)));
                }
            }
            Ok((tally, None))
        })
        .collect();

    let mut tally = Tally::default();
    for (ai, item) in per_a.into_iter().enumerate() {
        let (t, witness) = item?;
        tally = tally + t;
        if let Some(w) = witness {
            report.cases = ai as u64 * count + count;
            return Ok(report.fail(w));
        }
    }
    report.cases = count * count;
    Ok(report
        .note(format!("{} related pairs", tally.related))
        .note(format!("{} pairs separated by curvature", tally.curvature))
        .note(format!("{} pairs separated only by ring holonomy", tally.holonomy)))
}

fn sampled_remark1(width: usize, horizon: usize, k: usize, seed: u64, samples: u64) -> Result<CheckReport, Error> {
    guard("phi search", phi_bits(width, horizon), PHI_LIMIT)?;
    if k > 64 {
        return Err(Error::InstanceTooLarge(format!("gauge diagrams of {k} bits")));
    }
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let phi_mask = (1u64 << phi_bits(width, horizon)) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Half the pairs are related by construction, half are independent.
    let mut cases = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let a = GaugeDiagram::from_index(width, horizon, rng.gen::<u64>() & mask)?;
        let b = if rng.gen::<bool>() {
            gauge_a(
                &a,
                &PhiField::from_index(width, horizon + 1, rng.gen::<u64>() & phi_mask)?,
            )?
        } else {
            GaugeDiagram::from_index(width, horizon, rng.gen::<u64>() & mask)?
        };
        cases.push((a, b));
    }
    let results: Vec<Result<(bool, bool, bool), Error>> = cases.par_iter().map(|(a, b)| classify_pair(a, b)).collect();
    let mut report = CheckReport::new(format!("remark1 (n={width}, t={horizon}, sampled seed={seed})"));
    for ((a, b), r) in cases.into_iter().zip(results) {
        let (oracle, criterion, solver) = r?;
        report.cases += 1;
        if oracle != criterion || oracle != solver {
            return Ok(report.fail(Counterexample::GaugePair {
                a,
                a_prime: b,
                oracle,
                criterion,
                solver,
            }));
        }
    }
    Ok(report.note(format!("{samples} random pairs")))
}

/// `(∃φ: G_φ d = d', J(d) = J(d'))` by brute force over φ.
pub(crate) fn classify_matter_pair(d: &MatterDiagram, d_prime: &MatterDiagram) -> Result<(bool, bool), Error> {
    let (n, t) = (d.width(), d.horizon());
    guard("phi search", n * (t + 1), PHI_LIMIT)?;
    let mut related = false;
    for p in 0..1u64 << (n * (t + 1)) {
        if gauge_psi(d, &PhiField::from_index(n, t, p)?)? == *d_prime {
            related = true;
            break;
        }
    }
    Ok((related, compute_j(d) == compute_j(d_prime)))
}

/// Matter diagrams are G-related exactly when their J fields agree: first
/// for all 16 pairs of single cells, then for all pairs of diagrams of
/// width `width <= 3` and horizon `horizon <= 1`.
pub fn check_equivalence_classes(width: usize, horizon: usize) -> Result<CheckReport, Error> {
    if width > 3 || horizon > 1 {
        return Err(Error::InstanceTooLarge(format!(
            "equivalence classes are checked for n <= 3, t <= 1, got n={width}, t={horizon}"
        )));
    }
    if width < 2 {
        return Err(Error::WidthTooSmall(width));
    }
    let start = Instant::now();
    let mut report = CheckReport::new(format!("equivalence-classes (n={width}, t={horizon})"));

    for s in 0..4u8 {
        for sp in 0..4u8 {
            use crate::lattice::Cell;
            let (c, cp) = (MatterCell::from_bits(s), MatterCell::from_bits(sp));
            report.cases += 1;
            let related = [false, true].iter().any(|&f| c.flipped_if(f) == cp);
            if related != (c.j() == cp.j()) {
                let single = |cell| MatterDiagram::single(RingConfig::uniform(2, cell).expect("width 2"));
                return Ok(report.fail(Counterexample::MatterPair {
                    d: single(c),
                    d_prime: single(cp),
                    related,
                    same_j: c.j() == cp.j(),
                }));
            }
        }
    }

    let k = SpacetimeDiagram::<MatterCell>::bit_len(width, horizon);
    let count = 1u64 << k;
    let diagrams = (0..count)
        .map(|i| MatterDiagram::from_index(width, horizon, i))
        .collect::<Result<Vec<_>, _>>()?;
    let j: Vec<u64> = diagrams.iter().map(|d| compute_j(d).to_index()).collect();
    let phis = (0..1u64 << (width * (horizon + 1)))
        .map(|p| PhiField::from_index(width, horizon, p))
        .collect::<Result<Vec<_>, _>>()?;
    let per_d: Vec<Result<Option<Counterexample>, Error>> = diagrams
        .par_iter()
        .enumerate()
        .map(|(di, d)| {
            let mut reachable = vec![false; count as usize];
            for phi in &phis {
                reachable[gauge_psi(d, phi)?.to_index() as usize] = true;
            }
            Ok((0..count as usize)
                .find(|&ei| reachable[ei] != (j[di] == j[ei]))
                .map(|ei| Counterexample::MatterPair {
                    d: d.clone(),
                    d_prime: diagrams[ei].clone(),
                    related: reachable[ei],
                    same_j: j[di] == j[ei],
                }))
        })
        .collect();
    for (di, item) in per_d.into_iter().enumerate() {
        if let Some(w) = item? {
            report.cases += di as u64 * count + count;
            return Ok(report.fail(w));
        }
    }
    report.cases += count * count;
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn remark1_holds_exhaustively_small() {
        let r = check_remark1(2, 1, SearchMode::Exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{}", r.render());
        assert_eq!(r.cases, 65_536);
    }

    #[test]
    fn remark1_guards() {
        assert!(matches!(
            check_remark1(4, 2, SearchMode::Exhaustive),
            Err(Error::InstanceTooLarge(_))
        ));
        assert!(matches!(
            check_remark1(6, 3, SearchMode::Exhaustive),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn remark1_sampled_agrees() {
        for (n, t) in [(3, 2), (4, 1), (4, 2)] {
            let r = check_remark1(n, t, SearchMode::Sampled { seed: 11, samples: 150 }).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{}", r.render());
        }
    }

    #[test]
    fn identical_pairs_are_related() {
        for i in (0..1 << 12).step_by(97) {
            let a = GaugeDiagram::from_index(3, 1, i).unwrap();
            assert_eq!(classify_pair(&a, &a).unwrap(), (true, true, true));
        }
    }

    #[test]
    fn curvature_mismatch_pairs_are_unrelated() {
        let a = GaugeDiagram::zeros(2, 1).unwrap();
        for i in 0..1 << 8 {
            let b = GaugeDiagram::from_index(2, 1, i).unwrap();
            if !compute_f(&b).unwrap().is_zero() {
                assert_eq!(classify_pair(&a, &b).unwrap(), (false, false, false));
            }
        }
    }

    #[test]
    fn equivalence_classes_small() {
        let r = check_equivalence_classes(2, 0).unwrap();
        assert_eq!((r.verdict, r.cases), (Verdict::Holds, 16 + 256));
        let r = check_equivalence_classes(3, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(check_equivalence_classes(4, 0).is_err());
    }

    #[test]
    fn single_bit_difference_breaks_equivalence() {
        let d = MatterDiagram::from_index(3, 1, 0b1001_0110_0011).unwrap();
        let e = MatterDiagram::from_index(3, 1, 0b1001_0110_0011 ^ 0b100_0000).unwrap();
        assert_eq!(classify_matter_pair(&d, &e).unwrap(), (false, false));
        assert_eq!(classify_matter_pair(&d, &d).unwrap(), (true, true));
    }
}
