//! One-step rules for matter and gauge field, their composition into a
//! theory, and validity checking of spacetime diagrams.
//!
//! Row convention: gauge row `t` dresses the gates whose outputs form matter
//! row `t + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::lattice::{GaugeCell, MatterCell, RingConfig, SpacetimeDiagram};

pub type MatterRow = RingConfig<MatterCell>;
pub type GaugeRow = RingConfig<GaugeCell>;
pub type MatterDiagram = SpacetimeDiagram<MatterCell>;
pub type GaugeDiagram = SpacetimeDiagram<GaugeCell>;

/// Dynamics of the gauge field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SRule {
    /// `r` is taken from the right neighbour, `l` from the left one.
    Advect,
    /// `Advect` followed by flipping both bits.
    AdvectFlip,
    /// The field does not change.
    Frozen,
    /// No internal dynamics: the field is an external diagram.
    None,
}

impl SRule {
    pub const ALL: [SRule; 4] = [SRule::Advect, SRule::AdvectFlip, SRule::Frozen, SRule::None];

    pub fn name(self) -> &'static str {
        match self {
            SRule::Advect => "advect",
            SRule::AdvectFlip => "advect_flip",
            SRule::Frozen => "frozen",
            SRule::None => "none",
        }
    }
}

impl fmt::Display for SRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown gauge rule `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatterRule {
    /// The bare rule `R`.
    Free,
    /// The gauge-dressed rule `R_A`.
    Gauged,
}

/// A composite theory: matter rule plus gauge-field rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TheorySpec {
    matter: MatterRule,
    gauge: SRule,
}

impl TheorySpec {
    pub const FREE: TheorySpec = TheorySpec {
        matter: MatterRule::Free,
        gauge: SRule::None,
    };

    pub fn new(matter: MatterRule, gauge: SRule) -> Result<Self, Error> {
        if matter == MatterRule::Free && gauge != SRule::None {
            return Err(Error::InvalidTheory(format!(
                "the free rule has no gauge field, got gauge rule `{gauge}`"
            )));
        }
        Ok(TheorySpec { matter, gauge })
    }

    pub const fn gauged(gauge: SRule) -> Self {
        TheorySpec {
            matter: MatterRule::Gauged,
            gauge,
        }
    }

    pub fn matter_rule(&self) -> MatterRule {
        self.matter
    }

    pub fn gauge_rule(&self) -> SRule {
        self.gauge
    }
}

impl fmt::Display for TheorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.matter {
            MatterRule::Free => f.write_str("R"),
            MatterRule::Gauged => write!(f, "RA+{}", self.gauge),
        }
    }
}

/// One step of the bare rule: left-movers come from `x + 1`, right-movers
/// from `x - 1`.
pub fn step_r(psi: &MatterRow) -> MatterRow {
    let out = (0..psi.width())
        .map(|x| MatterCell::new(psi.at(x, 1).minus, psi.at(x, -1).plus))
        .collect();
    RingConfig::new(out).expect("width preserved")
}

/// The dressed local gate: the right-moving input from `x - 1` is flipped by
/// `a.r`, the left-moving input from `x + 1` by `a.l`, then both are swapped
/// into place.
pub fn dressed_gate(plus_in: bool, minus_in: bool, a: GaugeCell) -> MatterCell {
    MatterCell::new(minus_in ^ a.l, plus_in ^ a.r)
}

/// One step of the gauged rule.
pub fn step_r_a(psi: &MatterRow, a: &GaugeRow) -> Result<MatterRow, Error> {
    a.check_width(psi.width())?;
    let out = (0..psi.width())
        .map(|x| dressed_gate(psi.at(x, -1).plus, psi.at(x, 1).minus, a.cells()[x]))
        .collect();
    RingConfig::new(out)
}

pub fn step_s(a: &GaugeRow, rule: SRule) -> Result<GaugeRow, Error> {
    let advect = |flip: bool| {
        let out = (0..a.width())
            .map(|x| GaugeCell::new(a.at(x, 1).r ^ flip, a.at(x, -1).l ^ flip))
            .collect();
        RingConfig::new(out).expect("width preserved")
    };
    match rule {
        SRule::Advect => Ok(advect(false)),
        SRule::AdvectFlip => Ok(advect(true)),
        SRule::Frozen => Ok(a.clone()),
        SRule::None => Err(Error::NoGaugeDynamics),
    }
}

/// How the gauge field of a run is provided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeInput {
    Initial(GaugeRow),
    External(GaugeDiagram),
}

/// A diagram of the joint configuration `c = (ψ, A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JointDiagram {
    pub matter: MatterDiagram,
    pub gauge: GaugeDiagram,
}

impl JointDiagram {
    pub fn new(matter: MatterDiagram, gauge: GaugeDiagram) -> Result<Self, Error> {
        gauge.check_shape(matter.width(), matter.horizon())?;
        Ok(JointDiagram { matter, gauge })
    }

    pub fn width(&self) -> usize {
        self.matter.width()
    }

    pub fn horizon(&self) -> usize {
        self.matter.horizon()
    }
}

/// Runs `spec` for `horizon` steps from `psi0`.
pub fn run(spec: TheorySpec, psi0: &MatterRow, gauge: &GaugeInput, horizon: usize) -> Result<JointDiagram, Error> {
    let width = psi0.width();
    let gauge = match (spec.gauge, gauge) {
        (SRule::None, GaugeInput::External(d)) => {
            d.check_shape(width, horizon)?;
            d.clone()
        }
        (SRule::None, GaugeInput::Initial(a0)) if spec.matter == MatterRule::Free => {
            a0.check_width(width)?;
            if !a0.cells().iter().all(|g| g.is_zero()) {
                return Err(Error::InvalidTheory("the free rule needs a zero gauge field".into()));
            }
            GaugeDiagram::zeros(width, horizon)?
        }
        (SRule::None, GaugeInput::Initial(_)) => {
            return Err(Error::InvalidTheory(
                "gauge rule `none` needs an external gauge diagram".into(),
            ))
        }
        (rule, GaugeInput::Initial(a0)) => {
            a0.check_width(width)?;
            let mut d = GaugeDiagram::single(a0.clone());
            for t in 0..horizon {
                let next = step_s(&d.rows()[t], rule)?;
                d.push(next)?;
            }
            d
        }
        (rule, GaugeInput::External(_)) => {
            return Err(Error::InvalidTheory(format!(
                "gauge rule `{rule}` generates its own field; give an initial row"
            )))
        }
    };
    if spec.matter == MatterRule::Free && !gauge.rows().iter().all(|r| r.cells().iter().all(|g| g.is_zero())) {
        return Err(Error::InvalidTheory("the free rule needs a zero gauge field".into()));
    }
    let mut matter = MatterDiagram::single(psi0.clone());
    for t in 0..horizon {
        let next = step_r_a(&matter.rows()[t], &gauge.rows()[t])?;
        matter.push(next)?;
    }
    JointDiagram::new(matter, gauge)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    Matter,
    Gauge,
}

/// Where a diagram first breaks its rule. `t` is the offending output row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub layer: Layer,
    pub x: usize,
    pub t: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layer = match self.layer {
            Layer::Matter => "matter",
            Layer::Gauge => "gauge",
        };
        write!(f, "{layer} cell x={} t={}", self.x, self.t)
    }
}

fn first_diff<C: crate::lattice::Cell>(expected: &RingConfig<C>, found: &RingConfig<C>) -> Option<usize> {
    expected.cells().iter().zip(found.cells()).position(|(a, b)| a != b)
}

/// Checks a matter diagram against the bare rule.
pub fn is_r_valid(d: &MatterDiagram) -> Result<(), Violation> {
    for t in 0..d.horizon() {
        let expected = step_r(&d.rows()[t]);
        if let Some(x) = first_diff(&expected, &d.rows()[t + 1]) {
            return Err(Violation {
                layer: Layer::Matter,
                x,
                t: t + 1,
            });
        }
    }
    Ok(())
}

/// Checks every consecutive row pair of `d` against `spec`, reporting the
/// earliest failing site (matter before gauge at equal times).
///
/// Under the free rule any nonzero gauge cell is a violation at its own row.
pub fn is_valid(spec: TheorySpec, d: &JointDiagram) -> Result<(), Violation> {
    let free = spec.matter == MatterRule::Free;
    let nonzero_gauge = |t: usize| {
        d.gauge.rows()[t]
            .cells()
            .iter()
            .position(|g| !g.is_zero())
            .map(|x| Violation {
                layer: Layer::Gauge,
                x,
                t,
            })
    };
    if free {
        if let Some(v) = nonzero_gauge(0) {
            return Err(v);
        }
    }
    for t in 0..d.horizon() {
        let (psi, a) = (&d.matter.rows()[t], &d.gauge.rows()[t]);
        let expected = if free {
            step_r(psi)
        } else {
            step_r_a(psi, a).expect("shape checked")
        };
        if let Some(x) = first_diff(&expected, &d.matter.rows()[t + 1]) {
            return Err(Violation {
                layer: Layer::Matter,
                x,
                t: t + 1,
            });
        }
        if free {
            if let Some(v) = nonzero_gauge(t + 1) {
                return Err(v);
            }
        } else if spec.gauge != SRule::None {
            let expected = step_s(a, spec.gauge).expect("rule has dynamics");
            if let Some(x) = first_diff(&expected, &d.gauge.rows()[t + 1]) {
                return Err(Violation {
                    layer: Layer::Gauge,
                    x,
                    t: t + 1,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Cell;

    fn matter(tokens: &str) -> MatterRow {
        RingConfig::new(
            tokens
                .split_whitespace()
                .map(|t| MatterCell::from_token(t).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn gauge(tokens: &str) -> GaugeRow {
        RingConfig::new(
            tokens
                .split_whitespace()
                .map(|t| GaugeCell::from_token(t).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// `W (X^r ⊗ X^l)` applied to `(ψ⁺(x-1), ψ⁻(x+1))`, written as the
    /// explicit gate truth table over all 2⁴ inputs.
    fn dressed_gate(plus_left: bool, minus_right: bool, r: bool, l: bool) -> MatterCell {
        const TABLE: [(u8, u8); 16] = [
            // (input bits p m r l, output bits minus plus)
            (0b0000, 0b00),
            (0b0001, 0b10),
            (0b0010, 0b01),
            (0b0011, 0b11),
            (0b0100, 0b10),
            (0b0101, 0b00),
            (0b0110, 0b11),
            (0b0111, 0b01),
            (0b1000, 0b01),
            (0b1001, 0b11),
            (0b1010, 0b00),
            (0b1011, 0b10),
            (0b1100, 0b11),
            (0b1101, 0b01),
            (0b1110, 0b10),
            (0b1111, 0b00),
        ];
        let key = (plus_left as u8) << 3 | (minus_right as u8) << 2 | (r as u8) << 1 | l as u8;
        let (_, out) = TABLE[key as usize];
        MatterCell::new(out & 0b10 != 0, out & 0b01 != 0)
    }

    #[test]
    fn truth_table_matches_step_r_a() {
        for n in 2..=4 {
            for pi in 0..MatterRow::count(n) {
                let psi = MatterRow::from_index(n, pi).unwrap();
                for ai in 0..GaugeRow::count(n) {
                    let a = GaugeRow::from_index(n, ai).unwrap();
                    let out = step_r_a(&psi, &a).unwrap();
                    for x in 0..n {
                        let g = a.cells()[x];
                        let want = dressed_gate(psi.at(x, -1).plus, psi.at(x, 1).minus, g.r, g.l);
                        assert_eq!(out.cells()[x], want);
                    }
                }
            }
        }
    }

    #[test]
    fn right_mover_moves_right() {
        assert_eq!(step_r(&matter("01 00 00 00")), matter("00 01 00 00"));
        assert_eq!(step_r(&matter("00 00 00 00")), matter("00 00 00 00"));
        assert_eq!(step_r(&matter("01 00 00 10")), matter("00 01 10 00"));
    }

    #[test]
    fn gauged_step_examples() {
        let psi = matter("01 10 00 11");
        assert_eq!(step_r_a(&psi, &gauge("00 00 00 00")).unwrap(), step_r(&psi));
        assert_eq!(step_r_a(&matter("00 00"), &gauge("10 00")).unwrap(), matter("01 00"));
        assert_eq!(step_r_a(&matter("00 10"), &gauge("01 00")).unwrap(), matter("00 00"));
        assert!(matches!(
            step_r_a(&matter("00 00"), &gauge("00 00 00")),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn gauge_rule_examples() {
        assert_eq!(
            step_s(&gauge("00 00 10 00"), SRule::Advect).unwrap(),
            gauge("00 10 00 00")
        );
        let a = gauge("10 01 11 00");
        assert_eq!(step_s(&a, SRule::Frozen).unwrap(), a);
        assert_eq!(step_s(&gauge("00 00"), SRule::AdvectFlip).unwrap(), gauge("11 11"));
        assert!(matches!(step_s(&a, SRule::None), Err(Error::NoGaugeDynamics)));
    }

    #[test]
    fn free_run_is_a_diagonal() {
        let d = run(
            TheorySpec::FREE,
            &matter("01 00 00 00"),
            &GaugeInput::Initial(GaugeRow::zeros(4).unwrap()),
            3,
        )
        .unwrap();
        for t in 0..=3 {
            for x in 0..4 {
                assert_eq!(d.matter.get(x as i64, t).plus, x == t);
                assert!(!d.matter.get(x as i64, t).minus);
            }
        }
        assert!(is_valid(TheorySpec::FREE, &d).is_ok());
    }

    #[test]
    fn advect_from_zero_matches_free() {
        let psi = matter("01 00 00 00");
        let zero = GaugeInput::Initial(GaugeRow::zeros(4).unwrap());
        let free = run(TheorySpec::FREE, &psi, &zero, 3).unwrap();
        let gauged = run(TheorySpec::gauged(SRule::Advect), &psi, &zero, 3).unwrap();
        assert_eq!(free, gauged);
    }

    #[test]
    fn frozen_source_emits_right_movers() {
        // Oracle: two manual applications of plus(x) <- plus(x-1) ^ r(x).
        let d = run(
            TheorySpec::gauged(SRule::Frozen),
            &matter("00 00 00 00"),
            &GaugeInput::Initial(gauge("00 10 00 00")),
            2,
        )
        .unwrap();
        assert_eq!(d.matter.rows()[1], matter("00 01 00 00"));
        assert_eq!(d.matter.rows()[2], matter("00 01 01 00"));
        assert!(d.gauge.rows().iter().all(|r| *r == gauge("00 10 00 00")));
    }

    #[test]
    fn run_rejects_inconsistent_inputs() {
        let psi = matter("00 00 00 00");
        let ext = GaugeDiagram::zeros(4, 2).unwrap();
        assert!(run(
            TheorySpec::gauged(SRule::None),
            &psi,
            &GaugeInput::External(ext.clone()),
            3
        )
        .is_err());
        assert!(run(TheorySpec::gauged(SRule::None), &psi, &GaugeInput::External(ext), 2).is_ok());
        assert!(run(
            TheorySpec::gauged(SRule::Advect),
            &psi,
            &GaugeInput::Initial(GaugeRow::zeros(3).unwrap()),
            2
        )
        .is_err());
        assert!(run(TheorySpec::FREE, &psi, &GaugeInput::Initial(gauge("10 00 00 00")), 2).is_err());
        assert!(TheorySpec::new(MatterRule::Free, SRule::Advect).is_err());
    }

    #[test]
    fn single_row_is_valid() {
        let d = JointDiagram::new(
            MatterDiagram::single(matter("11 01")),
            GaugeDiagram::single(gauge("10 01")),
        )
        .unwrap();
        for rule in SRule::ALL {
            assert!(is_valid(TheorySpec::gauged(rule), &d).is_ok());
        }
    }

    #[test]
    fn invalid_diagrams_report_earliest_site() {
        let mut d = run(
            TheorySpec::FREE,
            &matter("01 00 00 00"),
            &GaugeInput::Initial(GaugeRow::zeros(4).unwrap()),
            3,
        )
        .unwrap();
        let mut rows = d.matter.rows().to_vec();
        rows[2].set(3, MatterCell::new(true, false));
        rows[3].set(0, MatterCell::new(true, true));
        d.matter = MatterDiagram::new(rows).unwrap();
        assert_eq!(
            is_valid(TheorySpec::FREE, &d),
            Err(Violation {
                layer: Layer::Matter,
                x: 3,
                t: 2
            })
        );
    }

    #[test]
    fn even_width_sublattices_decouple() {
        // On even rings, sites with even x + t never talk to odd ones.
        let n = 4;
        for pi in 0..MatterRow::count(n) {
            let psi = MatterRow::from_index(n, pi).unwrap();
            let mut perturbed = psi.clone();
            perturbed.set(1, perturbed.cells()[1].flipped());
            let a = step_r(&psi);
            let b = step_r(&perturbed);
            for x in (1..n).step_by(2) {
                assert_eq!(a.cells()[x], b.cells()[x]);
            }
        }
    }
}
