//! Hand-written SVG: heatmaps of gridded output, scatter and line plots.
//! Plots only place the CSV values; nothing is resampled or smoothed.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::table::NumTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    Heatmap,
    Scatter,
    Line,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotSpec {
    pub kind: PlotKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    /// Colour column of a heatmap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(default)]
    pub log_x: bool,
    #[serde(default)]
    pub log_y: bool,
    #[serde(default)]
    pub log_z: bool,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 110.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

// viridis anchors
const RAMP: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn colour(t: f64) -> String {
    if !t.is_finite() {
        return "#999999".into();
    }
    let s = t.clamp(0.0, 1.0) * (RAMP.len() - 1) as f64;
    let i = (s.floor() as usize).min(RAMP.len() - 2);
    let f = s - i as f64;
    let (a, b) = (RAMP[i], RAMP[i + 1]);
    let mix = |p: f64, q: f64| (p + f * (q - p)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    log: bool,
    p0: f64,
    p1: f64,
}

impl Scale {
    fn new(values: impl Iterator<Item = f64>, log: bool, p0: f64, p1: f64, name: &str) -> Result<Self, CliError> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite()) {
            if log && v <= 0.0 {
                return Err(CliError::Config(format!("log axis for {name} needs positive values, found {v}")));
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo > hi {
            return Err(CliError::Config(format!("column {name} has no finite values")));
        }
        Ok(Self { lo, hi, log, p0, p1 })
    }

    fn t(&self, v: f64) -> f64 {
        let f = |x: f64| if self.log { x.log10() } else { x };
        if self.hi == self.lo {
            0.5
        } else {
            (f(v) - f(self.lo)) / (f(self.hi) - f(self.lo))
        }
    }

    fn at(&self, t: f64) -> f64 {
        if self.log {
            10f64.powf(self.lo.log10() + t * (self.hi.log10() - self.lo.log10()))
        } else {
            self.lo + t * (self.hi - self.lo)
        }
    }

    fn widened(&self, centres: &[f64]) -> Self {
        if centres.len() < 2 {
            return *self;
        }
        let e = edges(centres, self);
        Self {
            lo: self.at(e[0]),
            hi: self.at(e[e.len() - 1]),
            ..*self
        }
    }

    fn px(&self, v: f64) -> f64 {
        self.p0 + self.t(v) * (self.p1 - self.p0)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.hi == self.lo {
            return vec![self.lo];
        }
        if self.log {
            let (a, b) = (self.lo.log10().ceil() as i32, self.hi.log10().floor() as i32);
            if b >= a {
                let step = ((b - a) / 6 + 1) as usize;
                return (a..=b).step_by(step).map(|e| 10f64.powi(e)).collect();
            }
        }
        (0..=4).map(|i| self.lo + (self.hi - self.lo) * i as f64 / 4.0).collect()
    }
}

fn label(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{:.3}", v)
    }
}

fn axes(svg: &mut String, xs: &Scale, ys: &Scale, xname: &str, yname: &str) {
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, H - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    for t in xs.ticks() {
        let p = xs.px(t);
        let _ = writeln!(svg, r#"<line x1="{p:.2}" y1="{y0}" x2="{p:.2}" y2="{}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(svg, r#"<text x="{p:.2}" y="{}" text-anchor="middle" font-size="11">{}</text>"#, y0 + 18.0, label(t));
    }
    for t in ys.ticks() {
        let p = ys.px(t);
        let _ = writeln!(svg, r#"<line x1="{}" y1="{p:.2}" x2="{x0}" y2="{p:.2}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(svg, r#"<text x="{}" y="{:.2}" text-anchor="end" font-size="11">{}</text>"#, x0 - 8.0, p + 4.0, label(t));
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
        (x0 + x1) / 2.0,
        H - 15.0,
        escape(xname)
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{0}" text-anchor="middle" font-size="13" transform="rotate(-90 20 {0})">{1}</text>"#,
        (y0 + y1) / 2.0,
        escape(yname)
    );
}

/// Cell edges around sorted distinct centres, in axis-fraction space.
fn edges(centres: &[f64], s: &Scale) -> Vec<f64> {
    let t: Vec<f64> = centres.iter().map(|&c| s.t(c)).collect();
    if t.len() == 1 {
        return vec![0.0, 1.0];
    }
    let mut e = vec![t[0] - (t[1] - t[0]) / 2.0];
    e.extend(t.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    e.push(t[t.len() - 1] + (t[t.len() - 1] - t[t.len() - 2]) / 2.0);
    e
}

fn distinct(mut v: Vec<f64>) -> Vec<f64> {
    v.retain(|x| x.is_finite());
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn pick(table: &NumTable, name: &Option<String>, fallback: usize, role: &str) -> Result<usize, CliError> {
    match name {
        Some(n) => table.column(n),
        None if fallback < table.columns.len() => Ok(fallback),
        None => Err(CliError::Config(format!("table has no column for the {role} axis"))),
    }
}

pub fn render(table: &NumTable, spec: &PlotSpec) -> Result<String, CliError> {
    if table.rows.is_empty() {
        return Err(CliError::Config("CSV has no data rows".into()));
    }
    let ncol = table.columns.len();
    let xi = pick(table, &spec.x, 0, "x")?;
    let yi = match spec.kind {
        PlotKind::Heatmap => pick(table, &spec.y, 1, "y")?,
        _ => pick(table, &spec.y, ncol - 1, "y")?,
    };
    let col = |i: usize| table.rows.iter().map(move |r| r[i]);
    let mut xs = Scale::new(col(xi), spec.log_x, LEFT, W - RIGHT, &table.columns[xi])?;
    let mut ys = Scale::new(col(yi), spec.log_y, H - BOTTOM, TOP, &table.columns[yi])?;
    let mut svg = String::new();
    let mut body = String::new();
    let mut root_attrs = format!(r#"data-rows="{}""#, table.rows.len());
    match spec.kind {
        PlotKind::Heatmap => {
            let zi = pick(table, &spec.z, 2, "z")?;
            let zs = Scale::new(col(zi), spec.log_z, 0.0, 1.0, &table.columns[zi])?;
            let ux = distinct(col(xi).collect());
            let uy = distinct(col(yi).collect());
            // widen both axes so the outer cells sit inside the frame
            xs = xs.widened(&ux);
            ys = ys.widened(&uy);
            let (ex, ey) = (edges(&ux, &xs), edges(&uy, &ys));
            let find = |u: &[f64], v: f64| u.binary_search_by(|p| p.total_cmp(&v)).ok();
            let span = |t: f64, s: &Scale| s.p0 + t * (s.p1 - s.p0);
            for r in &table.rows {
                let (Some(i), Some(j)) = (find(&ux, r[xi]), find(&uy, r[yi])) else {
                    continue;
                };
                let (xa, xb) = (span(ex[i], &xs), span(ex[i + 1], &xs));
                let (ya, yb) = (span(ey[j + 1], &ys), span(ey[j], &ys));
                let _ = writeln!(
                    body,
                    r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                    xa.min(xb),
                    ya.min(yb),
                    (xb - xa).abs(),
                    (yb - ya).abs(),
                    colour(zs.t(r[zi]))
                );
            }
            // colour bar labelled with the exact CSV extremes
            let (bx, bw) = (W - RIGHT + 20.0, 16.0);
            let steps = 50;
            let bh = (H - BOTTOM - TOP) / steps as f64;
            for k in 0..steps {
                let t = (k as f64 + 0.5) / steps as f64;
                let y = H - BOTTOM - (k + 1) as f64 * bh;
                let _ = writeln!(body, r#"<rect x="{bx}" y="{y:.3}" width="{bw}" height="{:.3}" fill="{}"/>"#, bh + 0.5, colour(t));
            }
            let _ = writeln!(body, r#"<text x="{bx}" y="{}" font-size="10">{:.11e}</text>"#, TOP - 8.0, zs.hi);
            let _ = writeln!(body, r#"<text x="{bx}" y="{}" font-size="10">{:.11e}</text>"#, H - BOTTOM + 14.0, zs.lo);
            let _ = writeln!(
                body,
                r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
                bx + bw / 2.0,
                H - BOTTOM + 30.0,
                escape(&table.columns[zi])
            );
            let _ = write!(root_attrs, r#" data-zmin="{:.11e}" data-zmax="{:.11e}""#, zs.lo, zs.hi);
        }
        PlotKind::Scatter => {
            for r in &table.rows {
                if r[xi].is_finite() && r[yi].is_finite() {
                    let _ = writeln!(
                        body,
                        r##"<circle class="marker" cx="{:.3}" cy="{:.3}" r="2" fill="#21908c"/>"##,
                        xs.px(r[xi]),
                        ys.px(r[yi])
                    );
                }
            }
        }
        PlotKind::Line => {
            let pts: Vec<String> = table
                .rows
                .iter()
                .filter(|r| r[xi].is_finite() && r[yi].is_finite())
                .map(|r| format!("{:.3},{:.3}", xs.px(r[xi]), ys.px(r[yi])))
                .collect();
            let _ = writeln!(body, r##"<polyline fill="none" stroke="#3b528b" stroke-width="1.5" points="{}"/>"##, pts.join(" "));
        }
    }
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" {root_attrs}>"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    svg.push_str(&body);
    axes(&mut svg, &xs, &ys, &table.columns[xi], &table.columns[yi]);
    svg.push_str("</svg>\n");
    Ok(svg)
}
