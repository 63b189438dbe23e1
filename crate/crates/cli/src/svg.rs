//! Layered SVG rendering of an illumination run.
//!
//! Regions are painted oldest first with the same translucent fill, so
//! points lit early sit under many layers and read darker. Output depends
//! only on the inputs.

use std::fmt::Write;

use diffuse_core::paths::ReflectionPath;
use diffuse_core::regions::IlluminationResult;
use diffuse_core::{Point, Polygon};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(poly: &Polygon) -> Self {
        let xs: Vec<f64> = poly.vertices().iter().map(|p| p.x.to_f64()).collect();
        let ys: Vec<f64> = poly.vertices().iter().map(|p| p.y.to_f64()).collect();
        let (min_x, max_x) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        let (min_y, max_y) = ys.iter().fold((f64::MAX, f64::MIN), |(a, b), &y| (a.min(y), b.max(y)));
        let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
        Frame { min_x, max_y, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn xy(&self, p: &Point) -> (f64, f64) {
        (MARGIN + (p.x.to_f64() - self.min_x) * self.scale, MARGIN + (self.max_y - p.y.to_f64()) * self.scale)
    }

    fn points(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(p);
            if i > 0 {
                s.push(' ');
            }
            write!(s, "{x:.3},{y:.3}").unwrap();
        }
        s
    }
}

pub fn render(res: &IlluminationResult, path: Option<&ReflectionPath>) -> String {
    let poly = &res.polygon;
    let f = Frame::new(poly);
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r##"<polygon points="{}" fill="#ffffff" stroke="none"/>"##, f.points(poly.vertices())).unwrap();
    for (k, region) in res.regions.iter().enumerate() {
        writeln!(out, r#"<g id="R{k}">"#).unwrap();
        writeln!(
            out,
            r##"<polygon points="{}" fill="#e8a317" fill-opacity="0.3" stroke="none"/>"##,
            f.points(&region.outline())
        )
        .unwrap();
        for w in region.windows() {
            let (x1, y1) = f.xy(w.a_point(poly));
            let (x2, y2) = f.xy(&w.b.point);
            writeln!(
                out,
                r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#7a4d00" stroke-width="1.5" stroke-dasharray="6 4"/>"##
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(
        out,
        r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
        f.points(poly.vertices())
    )
    .unwrap();
    if let Some(p) = path {
        writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##,
            f.points(&p.points())
        )
        .unwrap();
        let (x, y) = f.xy(&p.target);
        writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="#1f4e9c"/>"##).unwrap();
    }
    let (x, y) = f.xy(&res.source);
    writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="#c00000"/>"##).unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
