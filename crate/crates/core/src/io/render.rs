//! Text and SVG pictures of spacetime diagrams, time running upward.

use std::fmt::Write;

use crate::dynamics::{GaugeDiagram, JointDiagram, MatterDiagram};
use crate::lattice::{BitField, Cell, RingConfig};
use crate::symmetry::compute_j;

const FILLED: char = '■';
const EMPTY: char = '□';

#[derive(Clone, Copy, Debug)]
pub enum DiagramView<'a> {
    Matter(&'a MatterDiagram),
    Gauge(&'a GaugeDiagram),
    Joint(&'a JointDiagram),
    Bits(&'a BitField),
}

impl DiagramView<'_> {
    fn shape(&self) -> (usize, usize) {
        match self {
            DiagramView::Matter(d) => (d.width(), d.horizon()),
            DiagramView::Gauge(d) => (d.width(), d.horizon()),
            DiagramView::Joint(d) => (d.width(), d.horizon()),
            DiagramView::Bits(d) => (d.width(), d.horizon()),
        }
    }
}

fn glyphs<C: Cell>(row: &RingConfig<C>, out: &mut String) {
    for (i, c) in row.cells().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let bits = c.to_bits();
        for b in 0..C::BITS {
            out.push(if bits >> b & 1 == 1 { FILLED } else { EMPTY });
        }
    }
}

/// One line per time step, latest at the top. Joint diagrams put the gauge
/// row (marked `A`) directly under the matter row (marked `ψ`) of the same
/// time.
pub fn render_text(view: DiagramView) -> String {
    let (_, horizon) = view.shape();
    let label_width = format!("t={horizon}").len();
    let mut out = String::new();
    for t in (0..=horizon).rev() {
        let label = format!("t={t}");
        let _ = write!(out, "{label:<label_width$} ");
        match view {
            DiagramView::Matter(d) => glyphs(&d.rows()[t], &mut out),
            DiagramView::Gauge(d) => glyphs(&d.rows()[t], &mut out),
            DiagramView::Bits(d) => glyphs(&d.rows()[t], &mut out),
            DiagramView::Joint(d) => {
                out.push_str("ψ ");
                glyphs(&d.matter.rows()[t], &mut out);
                out.push('\n');
                let _ = write!(out, "{:label_width$} A ", "");
                glyphs(&d.gauge.rows()[t], &mut out);
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    /// Side of one subcell square, in pixels.
    pub subcell: u32,
    /// Draw one square per matter cell shaded by `J` instead of the subcells.
    pub j_overlay: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            subcell: 16,
            j_overlay: false,
        }
    }
}

fn fill(bit: bool) -> &'static str {
    if bit {
        "black"
    } else {
        "white"
    }
}

fn rect(out: &mut String, x: u32, y: u32, w: u32, h: u32, color: &str) {
    let _ = writeln!(
        out,
        r#"    <rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{color}" stroke="gray" stroke-width="1"/>"#
    );
}

fn svg_row<C: Cell>(out: &mut String, row: &RingConfig<C>, y: u32, s: u32, h: u32) {
    let cell_w = s * 2;
    for (x, c) in row.cells().iter().enumerate() {
        let bits = c.to_bits();
        let x0 = x as u32 * cell_w;
        if C::BITS == 1 {
            rect(out, x0, y, cell_w, h, fill(bits & 1 == 1));
        } else {
            for b in 0..C::BITS as u32 {
                rect(out, x0 + b * s, y, s, h, fill(bits >> b & 1 == 1));
            }
        }
    }
}

/// A standalone SVG document with one `<g>` per time row, row 0 at the
/// bottom. Cells are two side-by-side subcell squares, black for 1.
pub fn render_svg(view: DiagramView, options: &SvgOptions) -> String {
    let s = options.subcell.max(1);
    let (width, horizon) = view.shape();
    // Joint rows carry a half-height gauge strip under the matter squares.
    let gauge_strip = if matches!(view, DiagramView::Joint(_)) && !options.j_overlay {
        s / 2
    } else {
        0
    };
    let row_h = s + gauge_strip;
    let (w, h) = (width as u32 * 2 * s, (horizon as u32 + 1) * row_h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let j = match (view, options.j_overlay) {
        (DiagramView::Matter(d), true) => Some(compute_j(d)),
        (DiagramView::Joint(d), true) => Some(compute_j(&d.matter)),
        _ => None,
    };
    for t in 0..=horizon {
        let y = (horizon - t) as u32 * row_h;
        let _ = writeln!(out, r#"  <g id="t{t}">"#);
        match (&j, view) {
            (Some(j), _) => svg_row(&mut out, &j.rows()[t], y, s, s),
            (None, DiagramView::Matter(d)) => svg_row(&mut out, &d.rows()[t], y, s, s),
            (None, DiagramView::Gauge(d)) => svg_row(&mut out, &d.rows()[t], y, s, s),
            (None, DiagramView::Bits(d)) => svg_row(&mut out, &d.rows()[t], y, s, s),
            (None, DiagramView::Joint(d)) => {
                svg_row(&mut out, &d.matter.rows()[t], y, s, s);
                if gauge_strip > 0 {
                    svg_row(&mut out, &d.gauge.rows()[t], y + s, s, gauge_strip);
                }
            }
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run, GaugeInput, GaugeRow, MatterRow, TheorySpec};
    use crate::lattice::MatterCell;

    fn free(psi0: MatterRow, horizon: usize) -> JointDiagram {
        let n = psi0.width();
        run(
            TheorySpec::FREE,
            &psi0,
            &GaugeInput::Initial(GaugeRow::zeros(n).unwrap()),
            horizon,
        )
        .unwrap()
    }

    #[test]
    fn right_mover_draws_a_diagonal() {
        let d = free(MatterRow::from_fn(4, |x| MatterCell::new(false, x == 0)).unwrap(), 2);
        let text = render_text(DiagramView::Matter(&d.matter));
        assert_eq!(text, "t=2 □□ □□ □■ □□\nt=1 □□ □■ □□ □□\nt=0 □■ □□ □□ □□\n");
    }

    #[test]
    fn vacuum_is_uniform() {
        let d = free(MatterRow::zeros(3).unwrap(), 1);
        assert_eq!(
            render_text(DiagramView::Matter(&d.matter)),
            "t=1 □□ □□ □□\nt=0 □□ □□ □□\n"
        );
    }

    #[test]
    fn crossing_particles_form_an_x() {
        let psi0 = MatterRow::from_fn(4, |x| MatterCell::new(x == 3, x == 0)).unwrap();
        let d = free(psi0, 3);
        let text = render_text(DiagramView::Matter(&d.matter));
        assert_eq!(
            text,
            "t=3 ■□ □□ □□ □■\nt=2 □□ ■□ □■ □□\nt=1 □□ □■ ■□ □□\nt=0 □■ □□ □□ ■□\n"
        );
    }

    #[test]
    fn joint_rows_are_marked() {
        let d = free(MatterRow::zeros(2).unwrap(), 0);
        assert_eq!(render_text(DiagramView::Joint(&d)), "t=0 ψ □□ □□\n    A □□ □□\n");
    }

    #[test]
    fn svg_is_deterministic_and_layered() {
        let d = free(MatterRow::from_fn(4, |x| MatterCell::new(false, x == 0)).unwrap(), 3);
        let a = render_svg(DiagramView::Matter(&d.matter), &SvgOptions::default());
        let b = render_svg(DiagramView::Matter(&d.matter), &SvgOptions::default());
        assert_eq!(a, b);
        assert!(a.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert_eq!(a.matches("<g id=").count(), 4);
        assert_eq!(a.matches("<rect").count(), 4 * 4 * 2);
        assert_eq!(a.matches("fill=\"black\"").count(), 4);
        assert!(a.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn j_overlay_uses_one_square_per_cell() {
        let d = free(MatterRow::from_fn(4, |x| MatterCell::new(false, x == 0)).unwrap(), 3);
        let svg = render_svg(
            DiagramView::Matter(&d.matter),
            &SvgOptions {
                subcell: 10,
                j_overlay: true,
            },
        );
        assert_eq!(svg.matches("<rect").count(), 4 * 4);
        assert_eq!(svg.matches("width=\"20\" height=\"10\" fill=\"black\"").count(), 4);
    }

    #[test]
    fn zero_horizon_svg_has_one_row() {
        let d = free(MatterRow::zeros(2).unwrap(), 0);
        let svg = render_svg(DiagramView::Joint(&d), &SvgOptions::default());
        assert_eq!(svg.matches("<g id=").count(), 1);
    }
}
