//! Text formats: scenario files, diagram serialization, and rendering.

mod render;
mod scenario;
mod serial;

use std::fmt;

pub use render::{render_svg, render_text, DiagramView, SvgOptions};
pub(crate) use scenario::scenario_free;
pub use scenario::{parse_scenario, PhiSource, Scenario};
pub use serial::{parse_serialized, serialize, Serialized};

/// A parse failure, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            line,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}: expected {}, found `{}`",
            self.line, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

use crate::lattice::{Cell, RingConfig};

/// Parses one row of whitespace-separated cell tokens.
pub(crate) fn parse_row<C: Cell>(line: usize, text: &str, width: Option<usize>) -> Result<RingConfig<C>, ParseError> {
    let expected = || match C::BITS {
        1 => "a bit token `0` or `1`".to_string(),
        n => format!("a {n}-character token over {{0,1}}"),
    };
    let cells = text
        .split_whitespace()
        .map(|tok| C::from_token(tok).ok_or_else(|| ParseError::new(line, expected(), tok)))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = width {
        if cells.len() != w {
            return Err(ParseError::new(
                line,
                format!("{w} cell tokens"),
                format!("{} tokens", cells.len()),
            ));
        }
    }
    RingConfig::new(cells).map_err(|e| ParseError::new(line, "at least 2 cell tokens", e.to_string()))
}

pub(crate) fn write_row<C: Cell>(row: &RingConfig<C>, out: &mut String) {
    for (i, c) in row.cells().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        c.write_token(out);
    }
}
