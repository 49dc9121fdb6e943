//! SVG drawings of planar clouds and shadows.

use std::fmt::Write;

use georecon::geometry::PointCloud;
use georecon::reconstruct::ShadowComplex;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct Frame {
    lo: [f64; 2],
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: &[[f64; 2]]) -> Frame {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        Frame {
            lo,
            scale,
            height: (hi[1] - lo[1]) * scale + 2.0 * MARGIN,
        }
    }

    /// Screen coordinates, y pointing down.
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.lo[0]) * self.scale,
            self.height - MARGIN - (p[1] - self.lo[1]) * self.scale,
        )
    }
}

fn planar(cloud: &PointCloud) -> Vec<[f64; 2]> {
    cloud.iter().map(|p| [p[0], p[1]]).collect()
}

/// Shadow cells (triangles, then segments) with an optional overlay cloud;
/// only the first two coordinates are drawn.
pub fn render(shadow: Option<&ShadowComplex>, cloud: Option<&PointCloud>) -> String {
    let base = shadow.map(|s| planar(&s.points)).unwrap_or_default();
    let extra = cloud.map(planar).unwrap_or_default();
    let all: Vec<[f64; 2]> = base.iter().chain(&extra).copied().collect();
    let f = Frame::fit(&all);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h:.1}" viewBox="0 0 {SIZE} {h:.1}">"#,
        h = f.height
    );
    if let Some(s) = shadow {
        out.push_str("<g fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\">\n");
        for t in &s.triangles {
            let pts: Vec<String> = t
                .iter()
                .map(|&i| {
                    let (x, y) = f.map(base[i]);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
        }
        out.push_str("</g>\n<g stroke=\"#3182bd\" stroke-width=\"0.6\">\n");
        for &[a, b] in &s.segments {
            let ((x1, y1), (x2, y2)) = (f.map(base[a]), f.map(base[b]));
            let _ = writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
        }
        out.push_str("</g>\n");
    }
    for (pts, color) in [(&base, "#08519c"), (&extra, "#d62728")] {
        if pts.is_empty() {
            continue;
        }
        let _ = writeln!(out, r#"<g fill="{color}">"#);
        for &p in pts {
            let (x, y) = f.map(p);
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2"/>"#);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
