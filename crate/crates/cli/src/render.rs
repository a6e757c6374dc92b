//! SVG drawing of a pair in a fundamental domain, optionally with lunes.

use std::fmt::Write;

use num_traits::ToPrimitive;

use floer_core::geom::{Arrangement, Pt, Rat};
use floer_core::lune::LuneTable;
use floer_core::surface::{CurvePair, SurfaceKind, Which};

const SIZE: f64 = 600.0;
const ALPHA: &str = "#1f4fd1";
const BETA: &str = "#d12a1f";
const LUNE: &str = "#f2c14e";

fn f(r: &Rat) -> f64 {
    r.to_f64().expect("finite coordinate")
}

/// Drawing window in surface coordinates.
struct Window {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl Window {
    fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Window {
        let scale = SIZE / (x1 - x0).max(y1 - y0);
        Window { x0, y0, x1, y1, scale }
    }

    fn width(&self) -> f64 {
        (self.x1 - self.x0) * self.scale
    }

    fn height(&self) -> f64 {
        (self.y1 - self.y0) * self.scale
    }

    fn map(&self, p: &Pt) -> (f64, f64) {
        ((f(&p.x) - self.x0) * self.scale, (self.y1 - f(&p.y)) * self.scale)
    }
}

fn bbox(pair: &CurvePair) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in [&pair.alpha, &pair.beta] {
        for v in &c.vertices {
            let (x, y) = (f(&v.x), f(&v.y));
            b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
        }
    }
    b
}

fn window(pair: &CurvePair) -> Window {
    let (x0, y0, x1, y1) = bbox(pair);
    match pair.surface {
        SurfaceKind::Torus => Window::new(0.0, 0.0, 1.0, 1.0),
        SurfaceKind::Annulus => {
            let m = 0.1 * (y1 - y0).max(0.1);
            Window::new(0.0, y0 - m, 1.0, y1 + m)
        }
        SurfaceKind::Plane | SurfaceKind::Sphere => {
            let m = 0.1 * (x1 - x0).max(y1 - y0);
            Window::new(x0 - m, y0 - m, x1 + m, y1 + m)
        }
    }
}

/// Point `p` moved into the fundamental domain by a deck translation.
fn reduce(pair: &CurvePair, p: &Pt) -> Pt {
    match pair.surface {
        SurfaceKind::Torus => Pt::new(&p.x - p.x.floor(), &p.y - p.y.floor()),
        SurfaceKind::Annulus => Pt::new(&p.x - p.x.floor(), p.y.clone()),
        _ => p.clone(),
    }
}

/// Translation taking a lift based at `p` back to the domain.
fn shift_to_domain(pair: &CurvePair, p: &Pt) -> Pt {
    &reduce(pair, p) - p
}

fn curve_paths(out: &mut String, pair: &CurvePair, w: &Window, which: Which, color: &str) {
    let corners = [
        Pt::new(Rat::from_float(w.x0).unwrap(), Rat::from_float(w.y0).unwrap()),
        Pt::new(Rat::from_float(w.x1).unwrap(), Rat::from_float(w.y1).unwrap()),
    ];
    let segs = pair.segments_near(which, &corners);
    let _ = write!(out, "  <path fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" d=\"");
    for s in &segs {
        let (ax, ay) = w.map(&s.a);
        let (bx, by) = w.map(&s.b);
        let _ = write!(out, "M{ax:.5} {ay:.5}L{bx:.5} {by:.5}");
    }
    out.push_str("\"/>\n");
}

fn cycle_path(out: &mut String, arr: &Arrangement, cycle: &[usize], g: &Pt, w: &Window) {
    for (i, &h) in cycle.iter().enumerate() {
        let (x, y) = w.map(&(&arr.vertices[arr.half_origin(h)] + g));
        let _ = write!(out, "{}{x:.5} {y:.5}", if i == 0 { 'M' } else { 'L' });
    }
    out.push('Z');
}

fn lune_regions(out: &mut String, pair: &CurvePair, w: &Window, table: &LuneTable) {
    for l in table.iter() {
        let t = &l.trace;
        let g = shift_to_domain(pair, &t.lift_x(pair));
        let arr = &t.chain.arrangement;
        let _ = writeln!(
            out,
            "  <g class=\"lune\" data-from=\"{}\" data-to=\"{}\">",
            l.x(),
            l.y()
        );
        for (fi, face) in arr.faces.iter().enumerate() {
            let v = t.chain.value(fi);
            let Some(outer) = &face.outer else { continue };
            if v <= 0 {
                continue;
            }
            out.push_str(&format!(
                "    <path fill=\"{LUNE}\" fill-opacity=\"0.45\" fill-rule=\"evenodd\" stroke=\"none\" d=\""
            ));
            cycle_path(out, arr, outer, &g, w);
            for hole in &face.holes {
                cycle_path(out, arr, hole, &g, w);
            }
            out.push_str("\"/>\n");
            if let Some(p) = arr.sample_point(fi) {
                let (x, y) = w.map(&(&p + &g));
                let _ = writeln!(out, "    <text x=\"{x:.5}\" y=\"{y:.5}\" font-size=\"11\">w={v}</text>");
            }
        }
        out.push_str("  </g>\n");
    }
}

/// Deterministic SVG of the pair; `lunes` shades every lune region.
pub fn svg(pair: &CurvePair, lunes: Option<&LuneTable>) -> String {
    let w = window(pair);
    let (wd, ht) = (w.width(), w.height());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{wd:.5}\" height=\"{ht:.5}\" viewBox=\"0 0 {wd:.5} {ht:.5}\">"
    );
    let _ = writeln!(
        out,
        "  <defs><clipPath id=\"domain\"><rect x=\"0\" y=\"0\" width=\"{wd:.5}\" height=\"{ht:.5}\"/></clipPath></defs>"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{wd:.5}\" height=\"{ht:.5}\" fill=\"white\" stroke=\"#888888\"/>"
    );
    out.push_str("  <g clip-path=\"url(#domain)\">\n");
    if let Some(t) = lunes {
        lune_regions(&mut out, pair, &w, t);
    }
    curve_paths(&mut out, pair, &w, Which::Alpha, ALPHA);
    curve_paths(&mut out, pair, &w, Which::Beta, BETA);
    for p in &pair.points {
        let (x, y) = w.map(&reduce(pair, &p.pos));
        let sign = if p.eps > 0 { '+' } else { '-' };
        let _ = writeln!(out, "  <circle cx=\"{x:.5}\" cy=\"{y:.5}\" r=\"3\" fill=\"black\"/>");
        let _ = writeln!(
            out,
            "  <text x=\"{:.5}\" y=\"{:.5}\" font-size=\"12\">x{} {sign}</text>",
            x + 5.0,
            y - 5.0,
            p.id
        );
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
