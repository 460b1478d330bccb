//! `z2ca`: simulate, transform and check the gauged reversible automaton.
//!
//! Exit codes: 0 on success or when a check holds, 1 when a check fails or
//! two gauge fields are not related, 2 on usage, input or precondition
//! errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use z2ca_core::io::{
    parse_scenario, parse_serialized, render_svg, render_text, serialize, DiagramView, Scenario, Serialized, SvgOptions,
};
use z2ca_core::verify::{
    check_equivalence_classes, check_gauge_fixing_soundness, check_local_covariance_r_a,
    check_r_not_gauge_invariant_on, check_remark1, enumerate_admissible_phi, PhiRestriction, SearchMode,
};
use z2ca_core::{
    compute_f, compute_j, gauge_joint, gauge_psi, is_r_valid, is_valid, solve_gauge, CheckReport, GaugeDiagram,
    JointDiagram, MatterRule, SRule, TheorySpec,
};

#[derive(Parser)]
#[command(
    name = "z2ca",
    version,
    about = "Z2 gauge theory on a reversible partitioned cellular automaton"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and print its spacetime diagram.
    Simulate {
        scenario: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run a scenario and apply its `phi` field to the result.
    Transform {
        scenario: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print the J field of a scenario's matter and the F field of its gauge field.
    Invariants {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
    },
    /// Find phi relating two gauge diagrams (DIAG files of kind gauge or joint).
    Solve {
        a: PathBuf,
        a_prime: PathBuf,
        /// Free bits of phi's first row, one per parity chain, e.g. `01`.
        #[arg(long)]
        seed_bits: Option<String>,
    },
    /// Run a named check and print its report.
    Check(CheckArgs),
    /// Draw a DIAG file.
    Render {
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Shade each matter cell by J instead of drawing subcells (SVG only).
        #[arg(long)]
        j_overlay: bool,
    },
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    render: Format,
    #[arg(long)]
    j_overlay: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Svg,
    Diag,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    J,
    F,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckName {
    LocalCovariance,
    RGaugeInvariance,
    Remark1,
    GaugeFixing,
    EquivalenceClasses,
    AdmissiblePhi,
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum PhiSet {
    All,
    Constant,
    Zero,
}

#[derive(clap::Args)]
struct CheckArgs {
    name: CheckName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value = "advect", value_parser = parse_rule)]
    s1: SRule,
    #[arg(long, default_value = "advect_flip", value_parser = parse_rule)]
    s2: SRule,
    /// Matter rule for admissible-phi: `R` or `RA`.
    #[arg(long, default_value = "RA")]
    rule: String,
    /// Gauge rule for admissible-phi.
    #[arg(long, default_value = "none", value_parser = parse_rule)]
    s: SRule,
    /// Initial phi rows searched by r-gauge-invariance.
    #[arg(long, value_enum, default_value_t = PhiSet::All)]
    phi: PhiSet,
    /// Draw this many random cases instead of enumerating all of them.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print elapsed time to stderr.
    #[arg(long)]
    timing: bool,
}

fn parse_rule(s: &str) -> Result<SRule, String> {
    s.parse()
}

/// A failure that maps to exit code 2.
struct Usage(String);

impl<E: fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load_scenario(path: &Path) -> Result<Scenario, Usage> {
    parse_scenario(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Serialized, Usage> {
    parse_serialized(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn draw(view: DiagramView, serial: impl FnOnce() -> Serialized, format: Format, j_overlay: bool) -> String {
    match format {
        Format::Text => render_text(view),
        Format::Svg => render_svg(
            view,
            &SvgOptions {
                j_overlay,
                ..SvgOptions::default()
            },
        ),
        Format::Diag => serialize(&serial()),
    }
}

/// The free rule has no gauge field worth showing.
fn draw_run(spec: TheorySpec, c: &JointDiagram, out: &Output) -> String {
    if spec == TheorySpec::FREE {
        draw(
            DiagramView::Matter(&c.matter),
            || Serialized::Matter(c.matter.clone()),
            out.render,
            out.j_overlay,
        )
    } else {
        draw(
            DiagramView::Joint(c),
            || Serialized::Joint(c.clone()),
            out.render,
            out.j_overlay,
        )
    }
}

fn gauge_of(s: Serialized, path: &Path) -> Result<GaugeDiagram, Usage> {
    match s {
        Serialized::Gauge(d) => Ok(d),
        Serialized::Joint(d) => Ok(d.gauge),
        _ => Err(Usage(format!("{}: expected a gauge or joint diagram", path.display()))),
    }
}

fn run_check(args: &CheckArgs) -> Result<CheckReport, Usage> {
    let mode = match args.samples {
        Some(samples) => SearchMode::Sampled {
            seed: args.seed,
            samples,
        },
        None => SearchMode::Exhaustive,
    };
    let sized = |n: usize, t: usize| (args.n.unwrap_or(n), args.t.unwrap_or(t));
    let exhaustive_only = |what: &str| match mode {
        SearchMode::Exhaustive => Ok(()),
        SearchMode::Sampled { .. } => Err(Usage(format!("{what} has no sampled mode"))),
    };
    Ok(match args.name {
        CheckName::LocalCovariance => {
            exhaustive_only("local-covariance")?;
            check_local_covariance_r_a()
        }
        CheckName::RGaugeInvariance => {
            exhaustive_only("r-gauge-invariance")?;
            let (n, t) = sized(4, 2);
            let phis = match args.phi {
                PhiSet::All => PhiRestriction::All,
                PhiSet::Constant => PhiRestriction::Constant,
                PhiSet::Zero => PhiRestriction::Zero,
            };
            check_r_not_gauge_invariant_on(n, t, phis)?
        }
        CheckName::Remark1 => {
            let (n, t) = sized(2, 1);
            check_remark1(n, t, mode)?
        }
        CheckName::GaugeFixing => {
            let (n, t) = sized(4, 3);
            check_gauge_fixing_soundness(args.s1, args.s2, n, t, mode)?
        }
        CheckName::EquivalenceClasses => {
            exhaustive_only("equivalence-classes")?;
            let (n, t) = sized(2, 1);
            check_equivalence_classes(n, t)?
        }
        CheckName::AdmissiblePhi => {
            exhaustive_only("admissible-phi")?;
            let (n, t) = sized(2, 1);
            let matter = match args.rule.as_str() {
                "R" => MatterRule::Free,
                "RA" => MatterRule::Gauged,
                other => return Err(Usage(format!("--rule: expected R or RA, found `{other}`"))),
            };
            let spec = TheorySpec::new(matter, args.s)?;
            enumerate_admissible_phi(spec, n, t)?.1
        }
    })
}

fn execute(cli: Cli) -> Result<ExitCode, Usage> {
    let mut stdout = String::new();
    let mut code = ExitCode::SUCCESS;
    match cli.command {
        Command::Simulate { scenario, out } => {
            let s = load_scenario(&scenario)?;
            stdout = draw_run(s.spec, &s.run()?, &out);
        }
        Command::Transform { scenario, out } => {
            let s = load_scenario(&scenario)?;
            let phi = s.phi_field()?.ok_or_else(|| Usage("scenario has no `phi`".into()))?;
            let c = s.run()?;
            let (moved, verdict) = if s.spec == TheorySpec::FREE {
                let m = gauge_psi(&c.matter, &phi)?;
                let v = is_r_valid(&m);
                (JointDiagram::new(m, c.gauge)?, v)
            } else {
                let g = gauge_joint(&c, &phi)?;
                let v = is_valid(s.spec, &g);
                (g, v)
            };
            match verdict {
                Ok(()) => eprintln!("valid under {}", s.spec),
                Err(v) => eprintln!("not valid under {}: {v}", s.spec),
            }
            stdout = draw_run(s.spec, &moved, &out);
        }
        Command::Invariants { scenario, which } => {
            let c = load_scenario(&scenario)?.run()?;
            if which != Which::F {
                stdout += &serialize(&Serialized::Bits {
                    name: "J".into(),
                    field: compute_j(&c.matter),
                });
            }
            if which != Which::J {
                if c.horizon() == 0 {
                    if which == Which::F {
                        return Err(Usage("F needs T >= 1".into()));
                    }
                } else {
                    stdout += &serialize(&Serialized::Bits {
                        name: "F".into(),
                        field: compute_f(&c.gauge)?,
                    });
                }
            }
        }
        Command::Solve { a, a_prime, seed_bits } => {
            let da = gauge_of(load_diagram(&a)?, &a)?;
            let db = gauge_of(load_diagram(&a_prime)?, &a_prime)?;
            let seed = seed_bits
                .map(|s| {
                    s.chars()
                        .map(|c| match c {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            other => Err(Usage(format!("--seed-bits: expected 0 or 1, found `{other}`"))),
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            match solve_gauge(&da, &db, seed.as_deref())? {
                Ok(phi) => {
                    stdout = serialize(&Serialized::Bits {
                        name: "phi".into(),
                        field: phi,
                    })
                }
                Err(obstruction) => {
                    stdout = format!("no phi: {obstruction}\n");
                    code = ExitCode::from(1);
                }
            }
        }
        Command::Check(args) => {
            let start = Instant::now();
            let report = run_check(&args)?;
            if args.timing {
                eprintln!("elapsed: {:.3?}", start.elapsed());
            }
            if !report.verdict.passed() {
                code = ExitCode::from(1);
            }
            stdout = report.render();
        }
        Command::Render {
            diagram,
            format,
            j_overlay,
        } => {
            let d = load_diagram(&diagram)?;
            let view = match &d {
                Serialized::Matter(m) => DiagramView::Matter(m),
                Serialized::Gauge(g) => DiagramView::Gauge(g),
                Serialized::Joint(j) => DiagramView::Joint(j),
                Serialized::Bits { field, .. } => DiagramView::Bits(field),
            };
            stdout = draw(view, || d.clone(), format, j_overlay);
        }
    }
    print!("{stdout}");
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
