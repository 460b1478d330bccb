//! Line-oriented scenario files.
//!
//! ```text
//! # a right-mover under the bare rule
//! N=4
//! T=3
//! rule=R
//! psi0=01 00 00 00
//! phi=
//!   0 0 0 0
//!   0 1 0 0
//!   0 0 0 0
//!   0 0 0 0
//!   0 0 0 0
//! ```
//!
//! Keys: `N`, `T`, `rule=R|RA`, `S=advect|advect_flip|frozen|none`, `psi0`,
//! `a0` or an `A=` block of `T+1` indented rows, and optionally `phi` (a
//! block of `T+2` rows, `const:<bit>`, `site:<x>,<t>` or `seed:<int>`) and
//! `solve_seed=<bits>`. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_row, write_row, ParseError};
use crate::dynamics::{run, GaugeInput, GaugeRow, JointDiagram, MatterRow, MatterRule, SRule, TheorySpec};
use crate::error::Error;
use crate::lattice::{BitField, Cell, PhiField, SpacetimeDiagram};
use crate::symmetry::chain_count;

/// Where a scenario's φ comes from. Materialized fields have horizon `T+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSource {
    Rows(PhiField),
    Constant(bool),
    Site { x: usize, t: usize },
    Seeded(u64),
}

impl PhiSource {
    pub fn materialize(&self, width: usize, horizon: usize) -> Result<PhiField, Error> {
        let h = horizon + 1;
        match *self {
            PhiSource::Rows(ref f) => {
                f.check_shape(width, h)?;
                Ok(f.clone())
            }
            PhiSource::Constant(v) => BitField::constant(width, h, v),
            PhiSource::Site { x, t } => BitField::single_site(width, h, x, t),
            PhiSource::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                BitField::from_fn(width, h, |_, _| rng.gen())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub width: usize,
    pub horizon: usize,
    pub spec: TheorySpec,
    pub psi0: MatterRow,
    pub gauge: GaugeInput,
    pub phi: Option<PhiSource>,
    pub solve_seed: Option<Vec<bool>>,
}

impl Scenario {
    pub fn run(&self) -> Result<JointDiagram, Error> {
        run(self.spec, &self.psi0, &self.gauge, self.horizon)
    }

    pub fn phi_field(&self) -> Result<Option<PhiField>, Error> {
        self.phi
            .as_ref()
            .map(|p| p.materialize(self.width, self.horizon))
            .transpose()
    }

    /// Canonical text form; `parse_scenario` reads it back unchanged.
    pub fn to_text(&self) -> String {
        let mut out = format!("N={}\nT={}\n", self.width, self.horizon);
        let rule = match self.spec.matter_rule() {
            MatterRule::Free => "R",
            MatterRule::Gauged => "RA",
        };
        out.push_str(&format!("rule={rule}\nS={}\npsi0=", self.spec.gauge_rule()));
        write_row(&self.psi0, &mut out);
        out.push('\n');
        match &self.gauge {
            GaugeInput::Initial(a0) => {
                out.push_str("a0=");
                write_row(a0, &mut out);
                out.push('\n');
            }
            GaugeInput::External(d) => {
                out.push_str("A=\n");
                block(d, &mut out);
            }
        }
        match &self.phi {
            None => {}
            Some(PhiSource::Rows(f)) => {
                out.push_str("phi=\n");
                block(f, &mut out);
            }
            Some(PhiSource::Constant(v)) => out.push_str(&format!("phi=const:{}\n", *v as u8)),
            Some(PhiSource::Site { x, t }) => out.push_str(&format!("phi=site:{x},{t}\n")),
            Some(PhiSource::Seeded(s)) => out.push_str(&format!("phi=seed:{s}\n")),
        }
        if let Some(seed) = &self.solve_seed {
            let bits: String = seed.iter().map(|&b| if b { '1' } else { '0' }).collect();
            out.push_str(&format!("solve_seed={bits}\n"));
        }
        out
    }
}

fn block<C: Cell>(d: &SpacetimeDiagram<C>, out: &mut String) {
    for row in d.rows() {
        out.push_str("  ");
        write_row(row, out);
        out.push('\n');
    }
}

const KEYS: [&str; 9] = ["N", "T", "rule", "S", "psi0", "a0", "A", "phi", "solve_seed"];

struct Entry<'a> {
    line: usize,
    value: &'a str,
    rows: Vec<(usize, &'a str)>,
}

fn parse_int(e: &Entry, what: &str) -> Result<usize, ParseError> {
    e.value
        .trim()
        .parse()
        .map_err(|_| ParseError::new(e.line, format!("a non-negative integer for {what}"), e.value))
}

fn parse_block<C: Cell>(e: &Entry, key: &str, width: usize, count: usize) -> Result<SpacetimeDiagram<C>, ParseError> {
    if !e.value.trim().is_empty() {
        return Err(ParseError::new(
            e.line,
            format!("`{key}=` followed by indented rows"),
            e.value,
        ));
    }
    if e.rows.len() != count {
        let line = e.rows.last().map_or(e.line, |r| r.0);
        return Err(ParseError::new(
            line,
            format!("{count} rows under `{key}=`"),
            format!("{} rows", e.rows.len()),
        ));
    }
    let rows = e
        .rows
        .iter()
        .map(|&(l, text)| parse_row::<C>(l, text, Some(width)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpacetimeDiagram::new(rows).expect("row widths checked"))
}

/// Parses and validates a scenario file.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let mut entries: BTreeMap<&str, Entry> = BTreeMap::new();
    let mut open_block: Option<&str> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if raw.starts_with([' ', '\t']) {
            let key = open_block.ok_or_else(|| ParseError::new(line, "a `key=value` line", trimmed))?;
            entries
                .get_mut(key)
                .expect("open block exists")
                .rows
                .push((line, trimmed));
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| ParseError::new(line, "a `key=value` line", trimmed))?;
        let key = key.trim();
        let key = *KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| ParseError::new(line, format!("one of the keys {}", KEYS.join(", ")), key))?;
        if let Some(prev) = entries.get(key) {
            return Err(ParseError::new(
                line,
                format!("a single `{key}=` (first at line {})", prev.line),
                format!("{key}="),
            ));
        }
        open_block = (value.trim().is_empty() && (key == "A" || key == "phi")).then_some(key);
        entries.insert(
            key,
            Entry {
                line,
                value: value.trim(),
                rows: Vec::new(),
            },
        );
    }
    let missing = |key: &str| ParseError::new(last_line.max(1), format!("a `{key}=` line"), "end of input");

    let width = parse_int(entries.get("N").ok_or_else(|| missing("N"))?, "N")?;
    let n_entry = &entries["N"];
    if width < 2 {
        return Err(ParseError::new(n_entry.line, "N >= 2", n_entry.value));
    }
    let horizon = parse_int(entries.get("T").ok_or_else(|| missing("T"))?, "T")?;

    let rule_entry = entries.get("rule").ok_or_else(|| missing("rule"))?;
    let matter = match rule_entry.value {
        "R" => MatterRule::Free,
        "RA" => MatterRule::Gauged,
        other => return Err(ParseError::new(rule_entry.line, "`R` or `RA`", other)),
    };
    let gauge_rule = match entries.get("S") {
        None => SRule::None,
        Some(e) => e
            .value
            .parse::<SRule>()
            .map_err(|_| ParseError::new(e.line, "advect, advect_flip, frozen or none", e.value))?,
    };
    let spec = TheorySpec::new(matter, gauge_rule).map_err(|err| {
        let line = entries.get("S").map_or(rule_entry.line, |e| e.line);
        ParseError::new(line, "S=none with rule=R", err.to_string())
    })?;

    let psi_entry = entries.get("psi0").ok_or_else(|| missing("psi0"))?;
    let psi0 = parse_row(psi_entry.line, psi_entry.value, Some(width))?;

    let gauge = match (entries.get("a0"), entries.get("A")) {
        (Some(a0), Some(block)) => {
            return Err(ParseError::new(
                block.line.max(a0.line),
                "either `a0=` or `A=`, not both",
                "A=",
            ))
        }
        (Some(e), None) => {
            if gauge_rule == SRule::None && matter == MatterRule::Gauged {
                return Err(ParseError::new(e.line, "an `A=` block for S=none", "a0="));
            }
            GaugeInput::Initial(parse_row(e.line, e.value, Some(width))?)
        }
        (None, Some(e)) => {
            if gauge_rule != SRule::None {
                return Err(ParseError::new(e.line, format!("`a0=` for S={gauge_rule}"), "A="));
            }
            GaugeInput::External(parse_block(e, "A", width, horizon + 1)?)
        }
        (None, None) => {
            if gauge_rule == SRule::None && matter == MatterRule::Gauged {
                return Err(missing("A"));
            }
            GaugeInput::Initial(GaugeRow::zeros(width).expect("width >= 2"))
        }
    };
    if matter == MatterRule::Free {
        let nonzero = match &gauge {
            GaugeInput::Initial(a0) => a0.cells().iter().any(|g| !g.is_zero()),
            GaugeInput::External(d) => d.rows().iter().any(|r| r.cells().iter().any(|g| !g.is_zero())),
        };
        if nonzero {
            let line = entries.get("a0").or(entries.get("A")).map_or(1, |e| e.line);
            return Err(ParseError::new(
                line,
                "an all-zero gauge field for rule=R",
                "nonzero gauge cell",
            ));
        }
    }

    let phi = match entries.get("phi") {
        None => None,
        Some(e) if e.value.is_empty() => Some(PhiSource::Rows(parse_block(e, "phi", width, horizon + 2)?)),
        Some(e) => Some(parse_phi_generator(e, width, horizon)?),
    };

    let solve_seed = match entries.get("solve_seed") {
        None => None,
        Some(e) => {
            let bits = e
                .value
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(ParseError::new(e.line, "a bit string over {0,1}", e.value)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let chains = chain_count(width);
            if bits.len() != chains {
                return Err(ParseError::new(
                    e.line,
                    format!("{chains} seed bits for N={width}"),
                    e.value,
                ));
            }
            Some(bits)
        }
    };

    Ok(Scenario {
        width,
        horizon,
        spec,
        psi0,
        gauge,
        phi,
        solve_seed,
    })
}

fn parse_phi_generator(e: &Entry, width: usize, horizon: usize) -> Result<PhiSource, ParseError> {
    let bad = || {
        ParseError::new(
            e.line,
            "`const:<0|1>`, `site:<x>,<t>`, `seed:<int>` or indented rows",
            e.value,
        )
    };
    let (kind, arg) = e.value.split_once(':').ok_or_else(bad)?;
    match kind {
        "const" => match arg {
            "0" => Ok(PhiSource::Constant(false)),
            "1" => Ok(PhiSource::Constant(true)),
            _ => Err(ParseError::new(e.line, "`const:0` or `const:1`", e.value)),
        },
        "site" => {
            let (x, t) = arg.split_once(',').ok_or_else(bad)?;
            let (x, t) = match (x.trim().parse::<usize>(), t.trim().parse::<usize>()) {
                (Ok(x), Ok(t)) => (x, t),
                _ => return Err(bad()),
            };
            if x >= width || t > horizon + 1 {
                return Err(ParseError::new(
                    e.line,
                    format!("a site inside {width} x {}", horizon + 2),
                    e.value,
                ));
            }
            Ok(PhiSource::Site { x, t })
        }
        "seed" => arg.trim().parse().map(PhiSource::Seeded).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Builds a free-rule scenario; used to package counterexamples.
pub(crate) fn scenario_free(psi0: MatterRow, horizon: usize, phi: PhiField) -> Scenario {
    let width = psi0.width();
    Scenario {
        width,
        horizon,
        spec: TheorySpec::FREE,
        psi0,
        gauge: GaugeInput::Initial(GaugeRow::zeros(width).expect("width >= 2")),
        phi: Some(PhiSource::Rows(phi)),
        solve_seed: None,
    }
}
