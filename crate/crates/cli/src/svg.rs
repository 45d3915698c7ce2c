//! Static SVG figures. Coordinates are converted to `f64` here and only
//! here; nothing drawn feeds back into a computation.

use std::fmt::Write as _;

use crossing_core::rational::to_f64;
use crossing_core::{Apex, CrossingField, GateConfig, Orientation, PolyCurve, Rational, SlopeBand};

const WIDTH: f64 = 720.0;
const PANEL: f64 = 300.0;
const STEP_PANEL: f64 = 140.0;
const MARGIN: f64 = 40.0;

#[derive(Clone, Copy, Debug)]
struct Bounds {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Bounds {
    fn around(xs: &[f64], ys: &[f64]) -> Bounds {
        let fold = |v: &[f64]| {
            v.iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                    (lo.min(x), hi.max(x))
                })
        };
        let (mut x0, mut x1) = fold(xs);
        let (mut y0, mut y1) = fold(ys);
        if !x0.is_finite() {
            (x0, x1) = (0.0, 1.0);
        }
        if !y0.is_finite() {
            (y0, y1) = (0.0, 1.0);
        }
        let pad = |lo: f64, hi: f64| {
            let d = if hi > lo { (hi - lo) * 0.08 } else { 1.0 };
            (lo - d, hi + d)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Bounds { x0, x1, y0, y1 }
    }
}

/// A plot panel: world bounds mapped onto a pixel box with `y` up.
struct Panel {
    b: Bounds,
    top: f64,
    height: f64,
}

impl Panel {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.b.x0) / (self.b.x1 - self.b.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        self.top + self.height - (y - self.b.y0) / (self.b.y1 - self.b.y0) * self.height
    }

    fn line(&self, out: &mut String, (x0, y0): (f64, f64), (x1, y1): (f64, f64), style: &str) {
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            self.px(x0),
            self.py(y0),
            self.px(x1),
            self.py(y1)
        );
    }

    fn frame(&self, out: &mut String, title: &str) {
        let _ = writeln!(
            out,
            r##"<rect x="{MARGIN}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#bbb"/>"##,
            self.top,
            WIDTH - 2.0 * MARGIN,
            self.height
        );
        let _ = writeln!(
            out,
            r#"<text x="{MARGIN}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"#,
            self.top - 6.0,
            escape(title)
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn document(height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" \
         viewBox=\"0 0 {WIDTH} {height}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

/// Step plot of `T` under a panel sharing its x-range.
fn step_plot(out: &mut String, field: &CrossingField, b: Bounds, top: f64) {
    let segs = field.t_profile();
    let tmax = segs.iter().map(|s| s.value).max().unwrap_or(0).max(1) as f64;
    let panel = Panel {
        b: Bounds {
            y0: 0.0,
            y1: tmax * 1.1,
            ..b
        },
        top,
        height: STEP_PANEL,
    };
    panel.frame(out, &format!("T(x), max {}", tmax as u32));
    for s in &segs {
        let (x0, x1, v) = (to_f64(&s.from), to_f64(&s.to), s.value as f64);
        let _ = writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#9ecae1" stroke="#3182bd"/>"##,
            panel.px(x0),
            panel.py(v),
            (panel.px(x1) - panel.px(x0)).max(0.5),
            panel.py(0.0) - panel.py(v)
        );
    }
}

fn draw_gates(out: &mut String, panel: &Panel, cfg: &GateConfig, style: &str) {
    for g in &cfg.gates {
        let x = to_f64(&g.x);
        panel.line(out, (x, to_f64(&g.m)), (x, to_f64(&g.top)), style);
    }
}

fn gate_extent(cfg: &GateConfig) -> (Vec<f64>, Vec<f64>) {
    let xs = cfg.gates.iter().map(|g| to_f64(&g.x)).collect();
    let ys = cfg
        .gates
        .iter()
        .flat_map(|g| [to_f64(&g.m), to_f64(&g.top)])
        .collect();
    (xs, ys)
}

/// Gates, the extremal slope rays from an optional start point, and `T(x)`.
pub fn slalom_figure(
    cfg: &GateConfig,
    band: &SlopeBand,
    field: &CrossingField,
    query: Option<(&Rational, &Rational)>,
) -> String {
    let (mut xs, mut ys) = gate_extent(cfg);
    if let Some(x) = field.x_dead() {
        xs.push(to_f64(x));
    }
    if let Some((x, y)) = query {
        xs.push(to_f64(x));
        ys.push(to_f64(y));
    }
    let b = Bounds::around(&xs, &ys);
    let panel = Panel {
        b,
        top: MARGIN,
        height: PANEL,
    };
    let mut out = String::new();
    panel.frame(
        &mut out,
        &format!("gates, band [{}, {}]", band.alpha(), band.beta()),
    );
    draw_gates(
        &mut out,
        &panel,
        cfg,
        r##"stroke="#d62728" stroke-width="3""##,
    );
    if let Some((x, y)) = query {
        let (x, y) = (to_f64(x), to_f64(y));
        for s in [band.alpha(), band.beta()] {
            let s = to_f64(s);
            panel.line(
                &mut out,
                (x, y),
                (b.x1, y + s * (b.x1 - x)),
                r##"stroke="#555" stroke-dasharray="4 3""##,
            );
        }
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#,
            panel.px(x),
            panel.py(y)
        );
    }
    step_plot(&mut out, field, b, MARGIN * 2.0 + PANEL);
    document(MARGIN * 3.0 + PANEL + STEP_PANEL, &out)
}

/// The curve, its verticalized gates, the gap rays from an optional apex,
/// and `T(x)` for the gates.
pub fn curve_figure(
    curve: &PolyCurve,
    band: &SlopeBand,
    gates: &GateConfig,
    field: &CrossingField,
    apex: Option<&Apex>,
) -> String {
    let (mut xs, mut ys) = gate_extent(gates);
    for p in curve.vertices() {
        xs.push(to_f64(&p.x));
        ys.push(to_f64(&p.y));
    }
    if let Some(x) = field.x_dead() {
        xs.push(to_f64(x));
    }
    if let Some(a) = apex {
        xs.push(to_f64(&a.x));
        ys.push(to_f64(&a.y));
    }
    let b = Bounds::around(&xs, &ys);
    let panel = Panel {
        b,
        top: MARGIN,
        height: PANEL,
    };
    let mut out = String::new();
    panel.frame(
        &mut out,
        &format!("curve and gates, band [{}, {}]", band.alpha(), band.beta()),
    );
    draw_gates(
        &mut out,
        &panel,
        gates,
        r##"stroke="#fdae6b" stroke-width="4""##,
    );
    let pts: Vec<String> = curve
        .vertices()
        .iter()
        .map(|p| {
            format!(
                "{:.2},{:.2}",
                panel.px(to_f64(&p.x)),
                panel.py(to_f64(&p.y))
            )
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
        pts.join(" ")
    );
    if let Some(a) = apex {
        let (x, y) = (to_f64(&a.x), to_f64(&a.y));
        let end = match a.orientation {
            Orientation::CurveRight => b.x1,
            Orientation::CurveLeft => b.x0,
        };
        for s in [band.alpha(), band.beta()] {
            let s = to_f64(s);
            panel.line(
                &mut out,
                (x, y),
                (end, y + s * (end - x)),
                r##"stroke="#2ca02c" stroke-dasharray="4 3""##,
            );
        }
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#,
            panel.px(x),
            panel.py(y)
        );
    }
    step_plot(&mut out, field, b, MARGIN * 2.0 + PANEL);
    document(MARGIN * 3.0 + PANEL + STEP_PANEL, &out)
}
