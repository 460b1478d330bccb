//! Inputs shared by the benchmarks.

use z2ca_core::{GaugeCell, GaugeRow, MatterCell, MatterRow};

/// A fixed, irregular matter row: the bits of a simple LCG.
pub fn noisy_matter(width: usize, seed: u64) -> MatterRow {
    let mut s = seed;
    MatterRow::from_fn(width, |_| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        MatterCell::new(s >> 62 & 1 == 1, s >> 63 == 1)
    })
    .expect("width >= 2")
}

pub fn noisy_gauge(width: usize, seed: u64) -> GaugeRow {
    noisy_matter(width, seed).map(|c| GaugeCell::new(c.minus, c.plus))
}
