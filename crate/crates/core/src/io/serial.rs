//! `DIAG` serialization: a header line, then rows earliest-first.
//!
//! ```text
//! DIAG N=4 T=1 kind=joint
//! 01 00 00 00 | 00 00 00 00
//! 00 01 00 00 | 00 00 00 00
//! ```
//!
//! Bit fields (φ, J, F) use `kind=bits name=<label>` with one-character
//! tokens.

use super::{parse_row, write_row, ParseError};
use crate::dynamics::{GaugeDiagram, JointDiagram, MatterDiagram};
use crate::lattice::{BitField, Cell, SpacetimeDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Serialized {
    Matter(MatterDiagram),
    Gauge(GaugeDiagram),
    Joint(JointDiagram),
    Bits { name: String, field: BitField },
}

impl Serialized {
    pub fn width(&self) -> usize {
        match self {
            Serialized::Matter(d) => d.width(),
            Serialized::Gauge(d) => d.width(),
            Serialized::Joint(d) => d.width(),
            Serialized::Bits { field, .. } => field.width(),
        }
    }

    pub fn horizon(&self) -> usize {
        match self {
            Serialized::Matter(d) => d.horizon(),
            Serialized::Gauge(d) => d.horizon(),
            Serialized::Joint(d) => d.horizon(),
            Serialized::Bits { field, .. } => field.horizon(),
        }
    }
}

fn header(out: &mut String, n: usize, t: usize, kind: &str) {
    out.push_str(&format!("DIAG N={n} T={t} kind={kind}"));
}

fn rows<C: Cell>(d: &SpacetimeDiagram<C>, out: &mut String) {
    for row in d.rows() {
        write_row(row, out);
        out.push('\n');
    }
}

pub fn serialize(s: &Serialized) -> String {
    let mut out = String::new();
    match s {
        Serialized::Matter(d) => {
            header(&mut out, d.width(), d.horizon(), "matter");
            out.push('\n');
            rows(d, &mut out);
        }
        Serialized::Gauge(d) => {
            header(&mut out, d.width(), d.horizon(), "gauge");
            out.push('\n');
            rows(d, &mut out);
        }
        Serialized::Joint(d) => {
            header(&mut out, d.width(), d.horizon(), "joint");
            out.push('\n');
            for (m, g) in d.matter.rows().iter().zip(d.gauge.rows()) {
                write_row(m, &mut out);
                out.push_str(" | ");
                write_row(g, &mut out);
                out.push('\n');
            }
        }
        Serialized::Bits { name, field } => {
            header(&mut out, field.width(), field.horizon(), "bits");
            out.push_str(&format!(" name={name}\n"));
            rows(field, &mut out);
        }
    }
    out
}

fn header_field<'a>(line: usize, token: Option<&'a str>, key: &str) -> Result<&'a str, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, format!("`{key}=`"), "end of line"))?;
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| ParseError::new(line, format!("`{key}=`"), token))
}

fn header_int(line: usize, token: Option<&str>, key: &str) -> Result<usize, ParseError> {
    let v = header_field(line, token, key)?;
    v.parse()
        .map_err(|_| ParseError::new(line, format!("a non-negative integer for {key}"), v))
}

/// Parses a `DIAG` document.
pub fn parse_serialized(text: &str) -> Result<Serialized, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, head) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "a `DIAG` header", "end of input"))?;
    let mut tokens = head.split_whitespace();
    match tokens.next() {
        Some("DIAG") => {}
        other => return Err(ParseError::new(hl, "`DIAG`", other.unwrap_or(""))),
    }
    let n = header_int(hl, tokens.next(), "N")?;
    let t = header_int(hl, tokens.next(), "T")?;
    let kind = header_field(hl, tokens.next(), "kind")?;
    let name = if kind == "bits" {
        Some(header_field(hl, tokens.next(), "name")?.to_string())
    } else {
        None
    };
    if let Some(extra) = tokens.next() {
        return Err(ParseError::new(hl, "end of header", extra));
    }
    let body: Vec<(usize, &str)> = lines.collect();
    if body.len() != t + 1 {
        let line = body.last().map_or(hl, |(l, _)| *l);
        return Err(ParseError::new(
            line,
            format!("{} rows for T={t}", t + 1),
            format!("{} rows", body.len()),
        ));
    }
    fn diagram<C: Cell>(body: &[(usize, &str)], n: usize) -> Result<SpacetimeDiagram<C>, ParseError> {
        let rows = body
            .iter()
            .map(|&(l, text)| parse_row::<C>(l, text, Some(n)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpacetimeDiagram::new(rows).expect("row widths checked"))
    }
    Ok(match kind {
        "matter" => Serialized::Matter(diagram(&body, n)?),
        "gauge" => Serialized::Gauge(diagram(&body, n)?),
        "bits" => Serialized::Bits {
            name: name.unwrap_or_default(),
            field: diagram(&body, n)?,
        },
        "joint" => {
            let mut matter = Vec::new();
            let mut gauge = Vec::new();
            for &(l, text) in &body {
                let (m, g) = text
                    .split_once('|')
                    .ok_or_else(|| ParseError::new(l, "`<matter tokens> | <gauge tokens>`", text))?;
                matter.push(parse_row(l, m, Some(n))?);
                gauge.push(parse_row(l, g, Some(n))?);
            }
            Serialized::Joint(
                JointDiagram::new(
                    SpacetimeDiagram::new(matter).expect("row widths checked"),
                    SpacetimeDiagram::new(gauge).expect("row widths checked"),
                )
                .expect("shapes agree"),
            )
        }
        other => return Err(ParseError::new(hl, "kind matter, gauge, joint or bits", other)),
    })
}
