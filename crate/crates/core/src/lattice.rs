//! Cells, periodic rings and spacetime diagrams.
//!
//! Every lattice in this crate is a ring of `width >= 2` cells with periodic
//! index arithmetic. A spacetime diagram is a materialized stack of rings,
//! row `0` being the initial configuration.

use std::fmt;

use crate::error::Error;

/// A fixed-size bit alphabet that can live in a ring.
///
/// `BITS` is the number of bits per cell; `to_bits`/`from_bits` pack them
/// with the first token character in bit 0.
pub trait Cell: Copy + Eq + Default + fmt::Debug + Send + Sync {
    const BITS: usize;

    fn to_bits(self) -> u8;

    fn from_bits(bits: u8) -> Self;

    /// Parses the textual token of one cell (`BITS` characters of `0`/`1`).
    fn from_token(token: &str) -> Option<Self> {
        if token.len() != Self::BITS {
            return None;
        }
        let mut bits = 0u8;
        for (i, ch) in token.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(Self::from_bits(bits))
    }

    fn write_token(self, out: &mut String) {
        let bits = self.to_bits();
        for i in 0..Self::BITS {
            out.push(if bits >> i & 1 == 1 { '1' } else { '0' });
        }
    }
}

/// Matter cell `(minus, plus)`: a left-moving and a right-moving subcell.
///
/// Token order is `minus` then `plus`, so `01` is a lone right-mover.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MatterCell {
    pub minus: bool,
    pub plus: bool,
}

impl MatterCell {
    pub const EMPTY: MatterCell = MatterCell::new(false, false);

    pub const fn new(minus: bool, plus: bool) -> Self {
        MatterCell { minus, plus }
    }

    /// Both subcells flipped (the `X ⊗ X` action).
    pub fn flipped(self) -> Self {
        MatterCell::new(!self.minus, !self.plus)
    }

    pub fn flipped_if(self, flip: bool) -> Self {
        if flip {
            self.flipped()
        } else {
            self
        }
    }

    /// The gauge invariant of a single cell: `plus XOR minus`.
    pub fn j(self) -> bool {
        self.plus ^ self.minus
    }
}

impl Cell for MatterCell {
    const BITS: usize = 2;

    fn to_bits(self) -> u8 {
        self.minus as u8 | (self.plus as u8) << 1
    }

    fn from_bits(bits: u8) -> Self {
        MatterCell::new(bits & 1 == 1, bits & 2 == 2)
    }
}

/// Gauge cell `(r, l)`; `r` dresses the right-moving input of the gate
/// producing this site, `l` the left-moving one. Token order is `r` then `l`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaugeCell {
    pub r: bool,
    pub l: bool,
}

impl GaugeCell {
    pub const ZERO: GaugeCell = GaugeCell::new(false, false);

    pub const fn new(r: bool, l: bool) -> Self {
        GaugeCell { r, l }
    }

    pub fn is_zero(self) -> bool {
        !self.r && !self.l
    }
}

impl Cell for GaugeCell {
    const BITS: usize = 2;

    fn to_bits(self) -> u8 {
        self.r as u8 | (self.l as u8) << 1
    }

    fn from_bits(bits: u8) -> Self {
        GaugeCell::new(bits & 1 == 1, bits & 2 == 2)
    }
}

impl Cell for bool {
    const BITS: usize = 1;

    fn to_bits(self) -> u8 {
        self as u8
    }

    fn from_bits(bits: u8) -> Self {
        bits & 1 == 1
    }
}

/// A configuration on a periodic ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingConfig<C> {
    cells: Vec<C>,
}

impl<C: Cell> RingConfig<C> {
    pub fn new(cells: Vec<C>) -> Result<Self, Error> {
        if cells.len() < 2 {
            return Err(Error::WidthTooSmall(cells.len()));
        }
        Ok(RingConfig { cells })
    }

    /// The all-default ring (vacuum / zero field).
    pub fn uniform(width: usize, cell: C) -> Result<Self, Error> {
        Self::new(vec![cell; width])
    }

    pub fn zeros(width: usize) -> Result<Self, Error> {
        Self::uniform(width, C::default())
    }

    pub fn from_fn(width: usize, f: impl FnMut(usize) -> C) -> Result<Self, Error> {
        Self::new((0..width).map(f).collect())
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[C] {
        &self.cells
    }

    /// Cell at `x` taken modulo the width; any integer is accepted.
    pub fn get(&self, x: i64) -> C {
        self.cells[x.rem_euclid(self.cells.len() as i64) as usize]
    }

    /// Neighbour access for in-range indices: `at(x, -1)` is `x - 1 mod N`.
    pub fn at(&self, x: usize, offset: isize) -> C {
        let n = self.cells.len();
        self.cells[(x as isize + offset).rem_euclid(n as isize) as usize]
    }

    pub fn set(&mut self, x: usize, cell: C) {
        self.cells[x] = cell;
    }

    pub fn map<D: Cell>(&self, f: impl Fn(C) -> D) -> RingConfig<D> {
        RingConfig {
            cells: self.cells.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Packs the ring into an integer, cell `x` at bit offset `x * C::BITS`.
    pub fn to_index(&self) -> u64 {
        assert!(self.width() * C::BITS <= 64, "ring too wide to pack into u64");
        self.cells
            .iter()
            .enumerate()
            .fold(0, |acc, (x, c)| acc | (c.to_bits() as u64) << (x * C::BITS))
    }

    pub fn from_index(width: usize, index: u64) -> Result<Self, Error> {
        let mask = (1u64 << C::BITS) - 1;
        Self::from_fn(width, |x| C::from_bits((index >> (x * C::BITS) & mask) as u8))
    }

    /// Number of distinct rings of this width.
    pub fn count(width: usize) -> u64 {
        1u64 << (width * C::BITS)
    }

    pub(crate) fn check_width(&self, width: usize) -> Result<(), Error> {
        if self.width() != width {
            return Err(Error::WidthMismatch {
                expected: width,
                found: self.width(),
            });
        }
        Ok(())
    }
}

impl<C: Cell> fmt::Debug for RingConfig<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            c.write_token(&mut s);
        }
        write!(f, "[{s}]")
    }
}

/// Time-indexed stack of rings, rows `0..=horizon`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpacetimeDiagram<C> {
    rows: Vec<RingConfig<C>>,
}

/// A bit per spacetime site: gauge parameters φ, and the invariants J and F.
pub type BitField = SpacetimeDiagram<bool>;
pub type PhiField = BitField;
pub type JField = BitField;
pub type FField = BitField;

impl<C: Cell> SpacetimeDiagram<C> {
    pub fn new(rows: Vec<RingConfig<C>>) -> Result<Self, Error> {
        let first = rows.first().ok_or(Error::EmptyDiagram)?;
        let width = first.width();
        for row in &rows {
            row.check_width(width)?;
        }
        Ok(SpacetimeDiagram { rows })
    }

    pub fn single(row: RingConfig<C>) -> Self {
        SpacetimeDiagram { rows: vec![row] }
    }

    pub fn zeros(width: usize, horizon: usize) -> Result<Self, Error> {
        Self::new(vec![RingConfig::zeros(width)?; horizon + 1])
    }

    pub fn from_fn(width: usize, horizon: usize, mut f: impl FnMut(usize, usize) -> C) -> Result<Self, Error> {
        let rows = (0..=horizon)
            .map(|t| RingConfig::from_fn(width, |x| f(x, t)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn width(&self) -> usize {
        self.rows[0].width()
    }

    pub fn horizon(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[RingConfig<C>] {
        &self.rows
    }

    /// Row at time `t`; out-of-range times are an error, not a wrap.
    pub fn row(&self, t: usize) -> Result<&RingConfig<C>, Error> {
        self.rows.get(t).ok_or(Error::TimeOutOfRange {
            t,
            horizon: self.horizon(),
        })
    }

    /// Cell at in-range time `t`, periodic position `x`.
    pub fn get(&self, x: i64, t: usize) -> C {
        self.rows[t].get(x)
    }

    pub(crate) fn at(&self, x: usize, offset: isize, t: usize) -> C {
        self.rows[t].at(x, offset)
    }

    pub fn push(&mut self, row: RingConfig<C>) -> Result<(), Error> {
        row.check_width(self.width())?;
        self.rows.push(row);
        Ok(())
    }

    /// The first `horizon + 1` rows.
    pub fn truncated(&self, horizon: usize) -> Result<Self, Error> {
        if horizon > self.horizon() {
            return Err(Error::TimeOutOfRange {
                t: horizon,
                horizon: self.horizon(),
            });
        }
        Ok(SpacetimeDiagram {
            rows: self.rows[..=horizon].to_vec(),
        })
    }

    pub fn map<D: Cell>(&self, f: impl Fn(C) -> D) -> SpacetimeDiagram<D> {
        SpacetimeDiagram {
            rows: self.rows.iter().map(|r| r.map(&f)).collect(),
        }
    }

    /// Number of bits needed to pack a diagram of this shape.
    pub fn bit_len(width: usize, horizon: usize) -> usize {
        width * (horizon + 1) * C::BITS
    }

    /// Packs the diagram, row `t` occupying bits from `t * width * C::BITS`.
    pub fn to_index(&self) -> u64 {
        let row_bits = self.width() * C::BITS;
        assert!(row_bits * self.rows.len() <= 64, "diagram too large to pack into u64");
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (t, r)| acc | r.to_index() << (t * row_bits))
    }

    pub fn from_index(width: usize, horizon: usize, index: u64) -> Result<Self, Error> {
        let row_bits = width * C::BITS;
        let mask = if row_bits >= 64 {
            u64::MAX
        } else {
            (1u64 << row_bits) - 1
        };
        let rows = (0..=horizon)
            .map(|t| RingConfig::from_index(width, index >> (t * row_bits) & mask))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub(crate) fn check_shape(&self, width: usize, horizon: usize) -> Result<(), Error> {
        if self.width() != width {
            return Err(Error::WidthMismatch {
                expected: width,
                found: self.width(),
            });
        }
        if self.horizon() != horizon {
            return Err(Error::HorizonMismatch {
                expected: horizon,
                found: self.horizon(),
            });
        }
        Ok(())
    }
}

impl<C: Cell> fmt::Debug for SpacetimeDiagram<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

impl BitField {
    pub fn constant(width: usize, horizon: usize, value: bool) -> Result<Self, Error> {
        Self::from_fn(width, horizon, |_, _| value)
    }

    /// A single 1 at `(x, t)`, zeros elsewhere.
    pub fn single_site(width: usize, horizon: usize, x: usize, t: usize) -> Result<Self, Error> {
        if x >= width {
            return Err(Error::PositionOutOfRange { x, width });
        }
        if t > horizon {
            return Err(Error::TimeOutOfRange { t, horizon });
        }
        Self::from_fn(width, horizon, |xx, tt| xx == x && tt == t)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.cells().iter().all(|&b| !b))
    }

    /// Site-wise XOR of two fields of the same shape.
    pub fn xor(&self, other: &BitField) -> Result<BitField, Error> {
        other.check_shape(self.width(), self.horizon())?;
        Self::from_fn(self.width(), self.horizon(), |x, t| {
            self.rows[t].cells()[x] ^ other.rows[t].cells()[x]
        })
    }

    /// First `(x, t)` in time-major order where the two fields differ.
    pub fn first_difference(&self, other: &BitField) -> Option<(usize, usize)> {
        for (t, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if let Some(x) = a.cells().iter().zip(b.cells()).position(|(p, q)| p != q) {
                return Some((x, t));
            }
        }
        None
    }
}
