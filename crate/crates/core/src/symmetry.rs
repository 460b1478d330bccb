//! Local Z₂ gauge transformations, the invariants `J` and `F`, and a
//! constructive solver for the transformation relating two gauge fields.
//!
//! A gauge diagram of horizon `T` is transformed by a φ field carrying one
//! extra row: gauge row `t` dresses the gates producing matter row `t + 1`,
//! so it picks up φ from both rows `t` and `t + 1`.

use std::fmt;

use crate::dynamics::{GaugeDiagram, JointDiagram, MatterDiagram};
use crate::error::Error;
use crate::lattice::{FField, GaugeCell, JField, PhiField, SpacetimeDiagram};

/// Which terms of the gauge-field transformation law are applied.
///
/// Only [`GaugeLaw::EXACT`] is a symmetry; the other settings exist so the
/// checks can demonstrate that every term is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaugeLaw {
    /// φ(x, t+1) in the `r` component.
    pub r_output: bool,
    /// φ(x-1, t) in the `r` component.
    pub r_input: bool,
    /// φ(x, t+1) in the `l` component.
    pub l_output: bool,
    /// φ(x+1, t) in the `l` component.
    pub l_input: bool,
}

impl GaugeLaw {
    pub const EXACT: GaugeLaw = GaugeLaw {
        r_output: true,
        r_input: true,
        l_output: true,
        l_input: true,
    };

    /// The four laws with exactly one term dropped.
    pub fn single_term_mutations() -> [(&'static str, GaugeLaw); 4] {
        let e = Self::EXACT;
        [
            ("drop phi(x,t+1) from r", GaugeLaw { r_output: false, ..e }),
            ("drop phi(x-1,t) from r", GaugeLaw { r_input: false, ..e }),
            ("drop phi(x,t+1) from l", GaugeLaw { l_output: false, ..e }),
            ("drop phi(x+1,t) from l", GaugeLaw { l_input: false, ..e }),
        ]
    }

    /// Transforms one gauge cell given φ at the output site and at the two
    /// input sites.
    pub fn apply(&self, a: GaugeCell, phi_out: bool, phi_left: bool, phi_right: bool) -> GaugeCell {
        GaugeCell::new(
            a.r ^ (self.r_output & phi_out) ^ (self.r_input & phi_left),
            a.l ^ (self.l_output & phi_out) ^ (self.l_input & phi_right),
        )
    }
}

fn check_phi(phi: &PhiField, width: usize, min_horizon: usize) -> Result<(), Error> {
    if phi.width() != width {
        return Err(Error::WidthMismatch {
            expected: width,
            found: phi.width(),
        });
    }
    if phi.horizon() < min_horizon {
        return Err(Error::HorizonMismatch {
            expected: min_horizon,
            found: phi.horizon(),
        });
    }
    Ok(())
}

/// Flips both subcells of `(x, t)` wherever φ(x, t) = 1.
///
/// `phi` may be taller than the diagram; extra rows are ignored.
pub fn gauge_psi(d: &MatterDiagram, phi: &PhiField) -> Result<MatterDiagram, Error> {
    check_phi(phi, d.width(), d.horizon())?;
    SpacetimeDiagram::from_fn(d.width(), d.horizon(), |x, t| {
        d.rows()[t].cells()[x].flipped_if(phi.rows()[t].cells()[x])
    })
}

/// Transforms a gauge diagram of horizon `T`; `phi` needs horizon `T + 1`.
pub fn gauge_a(a: &GaugeDiagram, phi: &PhiField) -> Result<GaugeDiagram, Error> {
    gauge_a_with(a, phi, GaugeLaw::EXACT)
}

pub fn gauge_a_with(a: &GaugeDiagram, phi: &PhiField, law: GaugeLaw) -> Result<GaugeDiagram, Error> {
    check_phi(phi, a.width(), a.horizon() + 1)?;
    SpacetimeDiagram::from_fn(a.width(), a.horizon(), |x, t| {
        law.apply(
            a.rows()[t].cells()[x],
            phi.rows()[t + 1].cells()[x],
            phi.at(x, -1, t),
            phi.at(x, 1, t),
        )
    })
}

/// Applies the same φ to both layers of a joint diagram.
pub fn gauge_joint(c: &JointDiagram, phi: &PhiField) -> Result<JointDiagram, Error> {
    JointDiagram::new(gauge_psi(&c.matter, phi)?, gauge_a(&c.gauge, phi)?)
}

/// Per-cell `plus XOR minus`.
pub fn compute_j(d: &MatterDiagram) -> JField {
    d.map(|c| c.j())
}

/// Plaquette curvature
/// `F(x,t) = A_l(x,t+1) ^ A_l(x-1,t) ^ A_r(x,t+1) ^ A_r(x+1,t)`,
/// one row fewer than the gauge diagram.
pub fn compute_f(a: &GaugeDiagram) -> Result<FField, Error> {
    if a.horizon() == 0 {
        return Err(Error::NoPlaquettes);
    }
    SpacetimeDiagram::from_fn(a.width(), a.horizon() - 1, |x, t| {
        let up = a.rows()[t + 1].cells()[x];
        up.l ^ a.at(x, -1, t).l ^ up.r ^ a.at(x, 1, t).r
    })
}

/// Why no φ relates two gauge diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeObstruction {
    /// The curvatures differ at plaquette `(x, t)`.
    CurvatureMismatch { x: usize, t: usize },
    /// The intra-row constraints along parity chain `chain` of row `t` do
    /// not close around the ring.
    RingHolonomy { chain: usize, t: usize },
}

impl fmt::Display for GaugeObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeObstruction::CurvatureMismatch { x, t } => {
                write!(f, "curvature mismatch at x={x} t={t}")
            }
            GaugeObstruction::RingHolonomy { chain, t } => {
                write!(f, "ring holonomy on chain {chain} of row {t}")
            }
        }
    }
}

/// Number of independent chains `x -> x + 2` on a ring: two on even rings,
/// one on odd rings.
pub fn chain_count(width: usize) -> usize {
    if width.is_multiple_of(2) {
        2
    } else {
        1
    }
}

/// Bits indexed `[t][x]`.
type Rows = Vec<Vec<bool>>;

fn differences(a: &GaugeDiagram, a_prime: &GaugeDiagram) -> Result<(Rows, Rows), Error> {
    a_prime.check_shape(a.width(), a.horizon())?;
    let split = |pick: fn(GaugeCell) -> bool| {
        a.rows()
            .iter()
            .zip(a_prime.rows())
            .map(|(r, rp)| {
                r.cells()
                    .iter()
                    .zip(rp.cells())
                    .map(|(&c, &cp)| pick(c) ^ pick(cp))
                    .collect()
            })
            .collect()
    };
    Ok((split(|c| c.r), split(|c| c.l)))
}

/// First plaquette where the curvatures of `a` and `a_prime` differ.
/// Diagrams of horizon 0 have no plaquettes and never mismatch.
pub fn curvature_mismatch(a: &GaugeDiagram, a_prime: &GaugeDiagram) -> Result<Option<(usize, usize)>, Error> {
    a_prime.check_shape(a.width(), a.horizon())?;
    if a.horizon() == 0 {
        return Ok(None);
    }
    Ok(compute_f(a)?.first_difference(&compute_f(a_prime)?))
}

/// Walks the row-0 intra-row constraint
/// `φ(x+1) = φ(x-1) ^ d_r(x) ^ d_l(x)` around each parity chain, starting
/// from `seed[chain]`. Returns the row, or the first chain that fails to
/// close.
fn initial_row(d_r: &[bool], d_l: &[bool], seed: &[bool]) -> Result<Vec<bool>, usize> {
    let n = d_r.len();
    let mut row = vec![false; n];
    for (chain, &start_bit) in seed.iter().enumerate() {
        let mut y = chain;
        let mut value = start_bit;
        row[y] = value;
        loop {
            let via = (y + 1) % n;
            value ^= d_r[via] ^ d_l[via];
            y = (y + 2) % n;
            if y == chain {
                if value != start_bit {
                    return Err(chain);
                }
                break;
            }
            row[y] = value;
        }
    }
    Ok(row)
}

/// Whether the row-0 constraint closes around every parity chain.
///
/// Together with equal curvature this is exactly solvability on a ring.
pub fn holonomy_closes(a: &GaugeDiagram, a_prime: &GaugeDiagram) -> Result<bool, Error> {
    let (d_r, d_l) = differences(a, a_prime)?;
    let seed = vec![false; chain_count(a.width())];
    Ok(initial_row(&d_r[0], &d_l[0], &seed).is_ok())
}

/// Finds φ with `gauge_a(a, φ) == a_prime`.
///
/// The free bits of φ's first row (one per parity chain, see
/// [`chain_count`]) are taken from `seed`, defaulting to zero. Every other
/// bit is forced: row 0 by the intra-row constraint, later rows by
/// `φ(x,t+1) = φ(x-1,t) ^ d_r(x,t)`, checked against
/// `φ(x,t+1) = φ(x+1,t) ^ d_l(x,t)`.
pub fn solve_gauge(
    a: &GaugeDiagram,
    a_prime: &GaugeDiagram,
    seed: Option<&[bool]>,
) -> Result<Result<PhiField, GaugeObstruction>, Error> {
    let n = a.width();
    let chains = chain_count(n);
    let zero_seed = vec![false; chains];
    let seed = seed.unwrap_or(&zero_seed);
    if seed.len() != chains {
        return Err(Error::SeedLength {
            expected: chains,
            found: seed.len(),
        });
    }
    let (d_r, d_l) = differences(a, a_prime)?;
    if let Some((x, t)) = curvature_mismatch(a, a_prime)? {
        return Ok(Err(GaugeObstruction::CurvatureMismatch { x, t }));
    }
    let first = match initial_row(&d_r[0], &d_l[0], seed) {
        Ok(row) => row,
        Err(chain) => return Ok(Err(GaugeObstruction::RingHolonomy { chain, t: 0 })),
    };
    let mut rows = vec![first];
    for t in 0..=a.horizon() {
        let prev = &rows[t];
        let mut next = Vec::with_capacity(n);
        for x in 0..n {
            let via_r = prev[(x + n - 1) % n] ^ d_r[t][x];
            let via_l = prev[(x + 1) % n] ^ d_l[t][x];
            if via_r != via_l {
                // Equal curvature guarantees this for t > 0.
                return Ok(Err(GaugeObstruction::RingHolonomy {
                    chain: (x + 1) % chains,
                    t,
                }));
            }
            next.push(via_r);
        }
        rows.push(next);
    }
    let phi = SpacetimeDiagram::new(
        rows.into_iter()
            .map(crate::lattice::RingConfig::new)
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    Ok(Ok(phi))
}
