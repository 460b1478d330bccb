//! Simulation and verification engine for a Z₂ gauge theory on a reversible
//! partitioned cellular automaton.
//!
//! The bare rule moves left- and right-moving particles on a periodic ring.
//! Dressing it with a two-bit gauge field makes it covariant under a local
//! black/white flip. This crate simulates both rules together with several
//! gauge-field dynamics, applies gauge transformations, computes the
//! invariants `J` (matter) and `F` (gauge curvature), solves for the
//! transformation relating two gauge fields, and checks the invariance
//! claims by exhaustive search on small rings.

pub mod dynamics;
pub mod error;
pub mod io;
pub mod lattice;
pub mod packed;
pub mod symmetry;
pub mod verify;

pub use dynamics::{
    is_r_valid, is_valid, run, step_r, step_r_a, step_s, GaugeDiagram, GaugeInput, GaugeRow, JointDiagram, Layer,
    MatterDiagram, MatterRow, MatterRule, SRule, TheorySpec, Violation,
};
pub use error::Error;
pub use lattice::{BitField, Cell, FField, GaugeCell, JField, MatterCell, PhiField, RingConfig, SpacetimeDiagram};
pub use symmetry::{
    compute_f, compute_j, gauge_a, gauge_joint, gauge_psi, holonomy_closes, solve_gauge, GaugeLaw, GaugeObstruction,
};
pub use verify::{CheckReport, Counterexample, Verdict};
