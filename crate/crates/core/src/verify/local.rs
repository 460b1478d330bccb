//! The dressed gate is covariant: transforming its inputs by φ at `x ± 1`,
//! its gauge cell by the transformation law, gives the original output
//! flipped by φ at the output site.

use std::time::Instant;

use super::{CheckReport, Counterexample};
use crate::dynamics::dressed_gate;
use crate::lattice::GaugeCell;
use crate::symmetry::GaugeLaw;

/// The seven bits a single gate application depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalCase {
    /// ψ⁺(x-1, t)
    pub plus_in: bool,
    /// ψ⁻(x+1, t)
    pub minus_in: bool,
    /// A(x, t)
    pub a: GaugeCell,
    /// φ(x-1, t)
    pub phi_left: bool,
    /// φ(x+1, t)
    pub phi_right: bool,
    /// φ(x, t+1)
    pub phi_out: bool,
}

impl LocalCase {
    /// Bit 0 `plus_in`, 1 `minus_in`, 2 `a.r`, 3 `a.l`, 4 `phi_left`,
    /// 5 `phi_right`, 6 `phi_out`.
    pub fn from_index(i: u8) -> Self {
        let bit = |k: u8| i >> k & 1 == 1;
        LocalCase {
            plus_in: bit(0),
            minus_in: bit(1),
            a: GaugeCell::new(bit(2), bit(3)),
            phi_left: bit(4),
            phi_right: bit(5),
            phi_out: bit(6),
        }
    }

    /// Whether transforming then stepping equals stepping then transforming.
    pub fn holds(&self, law: GaugeLaw) -> bool {
        let stepped_then_flipped = dressed_gate(self.plus_in, self.minus_in, self.a).flipped_if(self.phi_out);
        let a_prime = law.apply(self.a, self.phi_out, self.phi_left, self.phi_right);
        let flipped_then_stepped = dressed_gate(self.plus_in ^ self.phi_left, self.minus_in ^ self.phi_right, a_prime);
        stepped_then_flipped == flipped_then_stepped
    }
}

/// All 128 local cases under the exact law.
pub fn check_local_covariance_r_a() -> CheckReport {
    check_local_covariance_with(GaugeLaw::EXACT, false)
}

/// Sweeps the local cases under `law`; with `phi_zero_only` only the 16
/// cases with φ ≡ 0 are examined.
pub fn check_local_covariance_with(law: GaugeLaw, phi_zero_only: bool) -> CheckReport {
    let start = Instant::now();
    let name = match (law == GaugeLaw::EXACT, phi_zero_only) {
        (true, false) => "local-covariance".to_string(),
        (true, true) => "local-covariance (phi = 0)".to_string(),
        (false, _) => "local-covariance (mutated law)".to_string(),
    };
    let mut report = CheckReport::new(name);
    let limit: u8 = if phi_zero_only { 16 } else { 128 };
    for i in 0..limit {
        let case = LocalCase::from_index(i);
        report.cases += 1;
        if !case.holds(law) {
            report = report.fail(Counterexample::LocalGate { case, law });
            break;
        }
    }
    report.elapsed = start.elapsed();
    report
}
