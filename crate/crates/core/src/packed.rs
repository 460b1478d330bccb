//! Word-packed rows for rings of up to 64 cells.
//!
//! Each subcell layer is one `u64` with cell `x` in bit `x`. A step is two
//! rotations and two XORs, which is what the exhaustive sweeps and the
//! benchmarks use. [`crate::dynamics`] remains the reference semantics.

use crate::dynamics::{GaugeRow, MatterRow};
use crate::error::Error;
use crate::lattice::{GaugeCell, MatterCell, RingConfig};

pub const MAX_WIDTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedMatter {
    pub width: u32,
    pub minus: u64,
    pub plus: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedGauge {
    pub width: u32,
    pub r: u64,
    pub l: u64,
}

#[inline]
fn mask(width: u32) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Cell `x` takes the bit of cell `x + 1`.
#[inline]
fn from_right(bits: u64, width: u32) -> u64 {
    (bits >> 1 | bits << (width - 1)) & mask(width)
}

/// Cell `x` takes the bit of cell `x - 1`.
#[inline]
fn from_left(bits: u64, width: u32) -> u64 {
    (bits << 1 | bits >> (width - 1)) & mask(width)
}

fn check_width(width: usize) -> Result<u32, Error> {
    if width < 2 {
        return Err(Error::WidthTooSmall(width));
    }
    if width > MAX_WIDTH {
        return Err(Error::InstanceTooLarge(format!(
            "packed rows hold at most {MAX_WIDTH} cells, got {width}"
        )));
    }
    Ok(width as u32)
}

impl PackedMatter {
    pub fn new(width: usize, minus: u64, plus: u64) -> Result<Self, Error> {
        let width = check_width(width)?;
        Ok(PackedMatter {
            width,
            minus: minus & mask(width),
            plus: plus & mask(width),
        })
    }

    pub fn from_row(row: &MatterRow) -> Result<Self, Error> {
        let (mut minus, mut plus) = (0, 0);
        for (x, c) in row.cells().iter().enumerate().take(MAX_WIDTH) {
            minus |= (c.minus as u64) << x;
            plus |= (c.plus as u64) << x;
        }
        Self::new(row.width(), minus, plus)
    }

    pub fn to_row(self) -> MatterRow {
        RingConfig::from_fn(self.width as usize, |x| {
            MatterCell::new(self.minus >> x & 1 == 1, self.plus >> x & 1 == 1)
        })
        .expect("width >= 2")
    }

    /// Dense index in `0..4^width`, minus layer in the low bits.
    pub fn index(self) -> u64 {
        self.minus | self.plus << self.width
    }

    pub fn from_index(width: usize, index: u64) -> Result<Self, Error> {
        let w = check_width(width)?;
        if 2 * width > 64 {
            return Err(Error::InstanceTooLarge(format!("dense index needs 2 * {width} bits")));
        }
        Self::new(width, index, index >> w)
    }

    pub fn step(self) -> Self {
        PackedMatter {
            width: self.width,
            minus: from_right(self.minus, self.width),
            plus: from_left(self.plus, self.width),
        }
    }

    pub fn step_gauged(self, a: PackedGauge) -> Self {
        debug_assert_eq!(self.width, a.width);
        PackedMatter {
            width: self.width,
            minus: from_right(self.minus, self.width) ^ a.l,
            plus: from_left(self.plus, self.width) ^ a.r,
        }
    }

    /// Flip both subcells where `phi` has a 1.
    pub fn flip(self, phi: u64) -> Self {
        PackedMatter {
            width: self.width,
            minus: self.minus ^ phi,
            plus: self.plus ^ phi,
        }
    }

    pub fn j(self) -> u64 {
        self.minus ^ self.plus
    }
}

impl PackedGauge {
    pub fn new(width: usize, r: u64, l: u64) -> Result<Self, Error> {
        let width = check_width(width)?;
        Ok(PackedGauge {
            width,
            r: r & mask(width),
            l: l & mask(width),
        })
    }

    pub fn from_row(row: &GaugeRow) -> Result<Self, Error> {
        let (mut r, mut l) = (0, 0);
        for (x, c) in row.cells().iter().enumerate().take(MAX_WIDTH) {
            r |= (c.r as u64) << x;
            l |= (c.l as u64) << x;
        }
        Self::new(row.width(), r, l)
    }

    pub fn to_row(self) -> GaugeRow {
        RingConfig::from_fn(self.width as usize, |x| {
            GaugeCell::new(self.r >> x & 1 == 1, self.l >> x & 1 == 1)
        })
        .expect("width >= 2")
    }

    pub fn from_index(width: usize, index: u64) -> Result<Self, Error> {
        let w = check_width(width)?;
        if 2 * width > 64 {
            return Err(Error::InstanceTooLarge(format!("dense index needs 2 * {width} bits")));
        }
        Self::new(width, index, index >> w)
    }

    pub fn advect(self, flip: bool) -> Self {
        let f = if flip { mask(self.width) } else { 0 };
        PackedGauge {
            width: self.width,
            r: from_right(self.r, self.width) ^ f,
            l: from_left(self.l, self.width) ^ f,
        }
    }
}

/// Whether `step` is a bijection on all `4^width` rows, by counting images.
pub fn count_images(width: usize, step: impl Fn(PackedMatter) -> PackedMatter) -> Result<u64, Error> {
    if width > 12 {
        return Err(Error::InstanceTooLarge(format!(
            "image counting limited to width 12, got {width}"
        )));
    }
    let total = 1u64 << (2 * width);
    let mut seen = vec![false; total as usize];
    let mut distinct = 0;
    for i in 0..total {
        let out = step(PackedMatter::from_index(width, i)?).index() as usize;
        if !seen[out] {
            seen[out] = true;
            distinct += 1;
        }
    }
    Ok(distinct)
}
