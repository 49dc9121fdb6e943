//! JSON documents: filtered complexes, shadows, shape specs and reports.

use serde::{Deserialize, Serialize};

use georecon::complex::{Filtration, Simplex};
use georecon::geometry::shape::LISSAJOUS_PARAMS;
use georecon::geometry::{ConditionReport, PointCloud, ShapeGraph, ShapeKind, ShapeSpec};
use georecon::reconstruct::{ReconstructionReport, ShadowComplex};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub cap: usize,
    pub simplices: Vec<Vec<usize>>,
    pub values: Vec<f64>,
}

impl ComplexDoc {
    pub fn from_filtration(f: &Filtration) -> Self {
        ComplexDoc {
            cap: f.dim_cap(),
            simplices: f.entries().iter().map(|(s, _)| s.vertices().to_vec()).collect(),
            values: f.entries().iter().map(|&(_, v)| v).collect(),
        }
    }

    /// The filtration, with its range ending at the largest value.
    pub fn to_filtration(&self) -> Result<Filtration, CliError> {
        if self.simplices.len() != self.values.len() {
            return Err(CliError::Invalid(format!(
                "{} simplices but {} values",
                self.simplices.len(),
                self.values.len()
            )));
        }
        let entries = self
            .simplices
            .iter()
            .zip(&self.values)
            .map(|(s, &v)| Ok((Simplex::new(s.clone())?, v)))
            .collect::<Result<Vec<_>, georecon::Error>>()?;
        let max = self.values.iter().copied().fold(0.0, f64::max);
        Ok(Filtration::new(entries, self.cap, max)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShadowDoc {
    pub points: Vec<Vec<f64>>,
    pub segments: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub eps: f64,
    pub delta: f64,
}

impl ShadowDoc {
    pub fn from_shadow(s: &ShadowComplex) -> Self {
        ShadowDoc {
            points: s.points.iter().map(<[f64]>::to_vec).collect(),
            segments: s.segments.clone(),
            triangles: s.triangles.clone(),
            eps: s.eps,
            delta: s.delta,
        }
    }

    pub fn to_shadow(&self) -> Result<ShadowComplex, CliError> {
        let points = PointCloud::from_rows(&self.points)?;
        let n = points.len();
        let ok = self.segments.iter().all(|s| s[0] < s[1] && s[1] < n)
            && self.triangles.iter().all(|t| t[0] < t[1] && t[1] < t[2] && t[2] < n);
        if !ok {
            return Err(CliError::Invalid(
                "shadow cells must be increasing vertex ids of the points".into(),
            ));
        }
        Ok(ShadowComplex {
            points,
            segments: self.segments.clone(),
            triangles: self.triangles.clone(),
            eps: self.eps,
            delta: self.delta,
        })
    }
}

/// Shape config: `{"kind", "params", "delta", "rho", "b"}`. `delta`, `rho`
/// and `b` default to the registry values where the kind has them.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Value,
    pub delta: Option<f64>,
    pub rho: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleParams {
    radius: f64,
    #[serde(default)]
    center: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LemniscateParams {
    a: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LissajousParams {
    ax: f64,
    ay: f64,
    fx: u32,
    fy: u32,
    phase: f64,
}

impl Default for LissajousParams {
    fn default() -> Self {
        let (ax, ay, fx, fy, phase) = LISSAJOUS_PARAMS;
        LissajousParams { ax, ay, fx, fy, phase }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphParams {
    vertices: Vec<Vec<f64>>,
    edges: Vec<(usize, usize)>,
}

fn params<T: serde::de::DeserializeOwned>(v: &serde_json::Value, kind: &str) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Invalid(format!("{kind} params: {e}")))
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<ShapeSpec, CliError> {
        let p = &self.params;
        let mut spec = match self.kind.as_str() {
            "circle" => {
                let c: CircleParams = params(p, "circle")?;
                let mut s = ShapeSpec::circle(c.radius);
                s.kind = ShapeKind::Circle {
                    center: c.center,
                    radius: c.radius,
                };
                s
            }
            "lemniscate" => ShapeSpec::lemniscate(params::<LemniscateParams>(p, "lemniscate")?.a),
            "lissajous" => {
                let l: LissajousParams = if p.is_null() {
                    LissajousParams::default()
                } else {
                    params(p, "lissajous")?
                };
                let defaults = LissajousParams::default();
                let known = (l.ax / l.ay - defaults.ax / defaults.ay).abs() < 1e-12
                    && (l.fx, l.fy, l.phase) == (defaults.fx, defaults.fy, defaults.phase);
                let mut s = ShapeSpec::lissajous(l.ax / defaults.ax);
                if !known {
                    // The registry distortion only covers the built-in figure.
                    let delta = self.delta.ok_or_else(|| {
                        CliError::Invalid("custom Lissajous parameters need an explicit delta".into())
                    })?;
                    s = with_cycle(
                        ShapeKind::Lissajous {
                            ax: l.ax,
                            ay: l.ay,
                            fx: l.fx,
                            fy: l.fy,
                            phase: l.phase,
                        },
                        delta,
                    )?;
                }
                s
            }
            "embedded_graph" => {
                let g: GraphParams = params(p, "embedded_graph")?;
                let delta = self
                    .delta
                    .ok_or_else(|| CliError::Invalid("embedded_graph needs an explicit delta".into()))?;
                with_cycle(
                    ShapeKind::EmbeddedGraph {
                        vertices: g.vertices,
                        edges: g.edges,
                    },
                    delta,
                )?
            }
            other => return Err(CliError::Invalid(format!("unknown shape kind {other:?}"))),
        };
        if let Some(d) = self.delta {
            spec.distortion = d;
        }
        if let Some(b) = self.b {
            spec.shortest_cycle = Some(b);
            spec.convexity_radius = b / 4.0;
        }
        if let Some(r) = self.rho {
            spec.convexity_radius = r;
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn with_cycle(kind: ShapeKind, delta: f64) -> Result<ShapeSpec, CliError> {
    let mut spec = ShapeSpec {
        kind,
        distortion: delta,
        convexity_radius: 1.0,
        shortest_cycle: None,
    };
    spec.validate()?;
    let b = ShapeGraph::build(&spec.kind).shortest_cycle();
    spec.shortest_cycle = b;
    spec.convexity_radius = b.map_or(f64::INFINITY, |b| b / 4.0);
    Ok(spec)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionDoc {
    pub theorem: &'static str,
    pub hausdorff_bound: f64,
    pub middle: f64,
    pub upper: f64,
    pub passed: bool,
    pub failure: Option<String>,
}

impl From<&ConditionReport> for ConditionDoc {
    fn from(r: &ConditionReport) -> Self {
        ConditionDoc {
            theorem: r.theorem.name(),
            hausdorff_bound: r.hausdorff_bound,
            middle: r.middle,
            upper: r.upper,
            passed: r.passed,
            failure: r.failure.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub beta0: usize,
    pub beta1: usize,
    pub components: usize,
    pub eps: f64,
    pub delta: f64,
    pub threshold: f64,
    pub segments: usize,
    pub triangles: usize,
    pub hausdorff_bound: f64,
    pub hausdorff_estimate: Option<f64>,
    pub resolution: f64,
    pub expected_beta1: Option<usize>,
    pub beta1_ok: Option<bool>,
    pub hausdorff_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<ConditionDoc>,
}

impl ReportDoc {
    pub fn new(r: &ReconstructionReport, condition: Option<&ConditionReport>) -> Self {
        ReportDoc {
            beta0: r.beta0,
            beta1: r.beta1,
            components: r.components,
            eps: r.eps,
            delta: r.delta,
            threshold: r.threshold,
            segments: r.segments,
            triangles: r.triangles,
            hausdorff_bound: r.hausdorff_bound,
            hausdorff_estimate: r.hausdorff_estimate,
            resolution: r.resolution,
            expected_beta1: r.expected_beta1,
            beta1_ok: r.beta1_ok,
            hausdorff_ok: r.hausdorff_ok,
            condition: condition.map(ConditionDoc::from),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use georecon::complex::{rips_filtration, MetricMatrix};
    use georecon::reconstruct::reconstruct_graph;

    fn spec(json: &str) -> Result<ShapeSpec, CliError> {
        serde_json::from_str::<SpecDoc>(json).unwrap().to_spec()
    }

    #[test]
    fn complex_round_trip() {
        let cloud = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let f = rips_filtration(&MetricMatrix::euclidean(&cloud), 2.0, 2).unwrap();
        let doc = ComplexDoc::from_filtration(&f);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("1.4142135623730951"));
        let back: ComplexDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_filtration().unwrap().entries(), f.entries());
    }

    #[test]
    fn malformed_complex() {
        let missing_face = ComplexDoc {
            cap: 1,
            simplices: vec![vec![0], vec![0, 1]],
            values: vec![0.0, 1.0],
        };
        assert!(missing_face.to_filtration().is_err());
        let short = ComplexDoc {
            cap: 1,
            simplices: vec![vec![0]],
            values: vec![],
        };
        assert!(short.to_filtration().is_err());
    }

    #[test]
    fn shadow_round_trip() {
        let cloud = PointCloud::from_rows(&[[0.0, 0.0], [0.1, 0.0], [0.0, 0.1]]).unwrap();
        let s = reconstruct_graph(&cloud, 0.2, 1.0).unwrap();
        let text = serde_json::to_string(&ShadowDoc::from_shadow(&s)).unwrap();
        let back: ShadowDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_shadow().unwrap(), s);
        let mut bad = back;
        bad.triangles = vec![[0, 1, 7]];
        assert!(bad.to_shadow().is_err());
    }

    #[test]
    fn spec_documents() {
        let c = spec(r#"{"kind": "circle", "params": {"radius": 2.0}}"#).unwrap();
        assert_eq!(c, ShapeSpec::circle(2.0));
        let c = spec(r#"{"kind": "circle", "params": {"radius": 1.0}, "delta": 2.0, "rho": 0.5}"#).unwrap();
        assert_eq!((c.distortion, c.convexity_radius), (2.0, 0.5));
        let g = spec(
            r#"{"kind": "embedded_graph", "delta": 2.0,
                "params": {"vertices": [[0,0],[1,0],[1,1],[0,1]], "edges": [[0,1],[1,2],[2,3],[3,0]]}}"#,
        )
        .unwrap();
        assert_eq!(g, ShapeSpec::square(1.0));
        assert!(
            spec(r#"{"kind": "embedded_graph", "params": {"vertices": [[0,0],[1,0]], "edges": [[0,1]]}}"#).is_err()
        );
        assert!(spec(r#"{"kind": "circle", "params": {"radius": -1.0}}"#).is_err());
        assert!(spec(r#"{"kind": "torus"}"#).is_err());
        assert_eq!(spec(r#"{"kind": "lissajous"}"#).unwrap(), ShapeSpec::lissajous(1.0));
        assert!(
            spec(r#"{"kind": "lissajous", "params": {"ax": 1, "ay": 1, "fx": 3, "fy": 2, "phase": 0.3}}"#).is_err()
        );
    }
}
