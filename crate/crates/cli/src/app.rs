//! Command-line definitions and handlers.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use georecon::complex::{cech_filtration, rips_filtration, Filtration, MetricMatrix};
use georecon::geometry::{check_condition, sample_shape, ConditionReport, NoiseModel, PointCloud, ShapeSpec, Theorem};
use georecon::homology::{betti_numbers, compute_persistence, BettiQuery};
use georecon::intrinsic::{build_eps_graph, compute_d_eps};
use georecon::reconstruct::{reconstruct_graph, reconstruction_report};

use crate::format::{num, read_cloud, write_barcode, write_cloud, write_matrix};
use crate::json::{ComplexDoc, ReportDoc, ShadowDoc, SpecDoc};
use crate::{svg, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "georecon",
    version,
    about = "Homology and graph reconstruction from point samples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deterministic sample of a shape as CSV; reports the d_H bound.
    Sample(SampleArgs),
    /// Rips filtration of a cloud as JSON.
    Rips(RipsArgs),
    /// Čech filtration of a cloud as JSON.
    Cech(CechArgs),
    /// Shortest-path metric of the eps-neighborhood graph as a CSV matrix.
    Deps(DepsArgs),
    /// Persistence barcode, or persistent Betti numbers at given scales.
    Persist(PersistArgs),
    /// Betti numbers of a complex file.
    Betti(BettiArgs),
    /// Shadow reconstruction of a planar embedded graph.
    Reconstruct(ReconstructArgs),
    /// Checks a theorem's sampling condition.
    Validate(ValidateArgs),
    /// SVG of a shadow and/or a cloud.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ShapeArgs {
    /// Built-in shape: circle, lemniscate, lissajous, square, figure-eight, theta.
    #[arg(long, conflicts_with = "spec")]
    pub shape: Option<String>,
    /// Size of the built-in shape (radius, half-width or edge length).
    #[arg(long = "r", default_value_t = 1.0)]
    pub size: f64,
    /// Shape config file: {"kind", "params", "delta", "rho", "b"}.
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

impl ShapeArgs {
    fn resolve(&self) -> Result<Option<ShapeSpec>, CliError> {
        if let Some(path) = &self.spec {
            let doc: SpecDoc = serde_json::from_reader(BufReader::new(open(path)?))?;
            return doc.to_spec().map(Some);
        }
        match &self.shape {
            Some(name) => Ok(Some(ShapeSpec::builtin(name, self.size)?)),
            None => Ok(None),
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Noise magnitude; every point moves by at most this much.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// CSV destination; the bound goes to stdout. Without it the CSV goes
    /// to stdout and the bound to stderr.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Euclidean,
    /// Shortest paths in the eps-neighborhood graph.
    Intrinsic,
}

#[derive(Debug, Args)]
pub struct RipsArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = MetricKind::Euclidean)]
    pub metric: MetricKind,
    /// Neighborhood radius for the intrinsic metric.
    #[arg(long, required_if_eq("metric", "intrinsic"))]
    pub eps: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CechArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2)]
    pub cap: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DepsArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationKind {
    Rips,
    Cech,
    IntrinsicRips,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Rips,
    Cech,
    Graph,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Rips => Theorem::Rips,
            TheoremArg::Cech => Theorem::Cech,
            TheoremArg::Graph => Theorem::Graph,
        }
    }
}

#[derive(Debug, Args)]
pub struct PersistArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Defaults to the theorem's filtration, else rips.
    #[arg(long, value_enum)]
    pub filtration: Option<FiltrationKind>,
    #[arg(long, default_value_t = 2)]
    pub cap: usize,
    /// Largest scale of the filtration; defaults to the cloud diameter.
    #[arg(long)]
    pub max_scale: Option<f64>,
    /// Persistent Betti number of dimension K from scale S to T.
    #[arg(long, num_args = 3, value_names = ["K", "S", "T"], allow_negative_numbers = true)]
    pub query: Option<Vec<f64>>,
    /// Validate the theorem's condition, then query its scale pair.
    #[arg(long, value_enum, conflicts_with = "query")]
    pub theorem: Option<TheoremArg>,
    /// Theorem scale, or the neighborhood radius of intrinsic-rips.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Certified bound on the Hausdorff distance from the shape to the cloud.
    #[arg(long)]
    pub hausdorff: Option<f64>,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BettiArgs {
    /// Complex JSON as written by `rips` or `cech`.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Use the subcomplex with values at most this scale.
    #[arg(long)]
    pub at: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub delta: f64,
    /// Ground truth for the report (and b for validation).
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Shortest cycle length, overriding the shape's.
    #[arg(long)]
    pub b: Option<f64>,
    /// When given, the graph condition is checked before reconstructing.
    #[arg(long)]
    pub hausdorff: Option<f64>,
    /// Grid step of the Hausdorff estimate.
    #[arg(long, default_value_t = 0.002)]
    pub resolution: f64,
    /// Shadow JSON destination.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub hausdorff: f64,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[command(flatten)]
    pub shape: ShapeArgs,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, required_unless_present = "cloud")]
    pub shadow: Option<PathBuf>,
    #[arg(long)]
    pub cloud: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_cloud(path: &Path) -> Result<PointCloud, CliError> {
    read_cloud(BufReader::new(open(path)?))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    Ok(serde_json::from_reader(BufReader::new(open(path)?))?)
}

/// Runs `body` against the file at `path`, or against `stdout` when absent.
fn emit(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

/// `δ`, `ρ` and `b` from explicit flags, falling back to the shape.
struct Params {
    delta: Option<f64>,
    rho: Option<f64>,
    b: Option<f64>,
}

impl Params {
    fn merge(delta: Option<f64>, rho: Option<f64>, b: Option<f64>, shape: Option<&ShapeSpec>) -> Params {
        Params {
            delta: delta.or(shape.map(|s| s.distortion)),
            rho: rho.or(shape.map(|s| s.convexity_radius)),
            b: b.or(shape.and_then(|s| s.shortest_cycle)),
        }
    }

    fn condition(&self, theorem: Theorem, hausdorff: f64, eps: f64) -> Result<ConditionReport, CliError> {
        let missing = |what: &str| CliError::Usage(format!("--{what} (or a shape) is required by --theorem"));
        let delta = self.delta.ok_or_else(|| missing("delta"))?;
        let rho = match theorem {
            Theorem::Graph => self.rho.unwrap_or(f64::INFINITY),
            _ => self.rho.ok_or_else(|| missing("rho"))?,
        };
        if theorem == Theorem::Graph && self.b.is_none() {
            return Err(missing("b"));
        }
        Ok(check_condition(theorem, hausdorff, eps, delta, rho, self.b)?)
    }
}

fn require_passed(report: &ConditionReport) -> Result<(), CliError> {
    match &report.failure {
        None => Ok(()),
        Some(f) => Err(CliError::Precondition(format!(
            "{f} (d_H bound {}, {} vs {})",
            num(report.hausdorff_bound),
            num(report.middle),
            num(report.upper)
        ))),
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Sample(a) => sample(a, stdout, stderr),
        Command::Rips(a) => rips(a, stdout),
        Command::Cech(a) => cech(a, stdout),
        Command::Deps(a) => deps(a, stdout),
        Command::Persist(a) => persist(a, stdout),
        Command::Betti(a) => betti(a, stdout),
        Command::Reconstruct(a) => reconstruct(a, stdout),
        Command::Validate(a) => validate(a, stdout),
        Command::Render(a) => render(a, stdout),
    }
}

fn sample(a: SampleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let spec = a
        .shape
        .resolve()?
        .ok_or_else(|| CliError::Usage("sample needs --shape or --spec".into()))?;
    let s = sample_shape(&spec, a.n, NoiseModel::new(a.noise, a.seed))?;
    emit(a.output.as_deref(), stdout, |w| write_cloud(w, &s.cloud))?;
    let line = format!("hausdorff_bound {}", num(s.hausdorff_bound));
    if a.output.is_some() {
        writeln!(stdout, "{line}")?;
    } else {
        writeln!(stderr, "{line}")?;
    }
    Ok(())
}

fn intrinsic_metric(cloud: &PointCloud, eps: f64) -> Result<MetricMatrix, CliError> {
    Ok(compute_d_eps(&build_eps_graph(cloud, eps)?))
}

fn rips(a: RipsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cloud = load_cloud(&a.input)?;
    let metric = match a.metric {
        MetricKind::Euclidean => MetricMatrix::euclidean(&cloud),
        MetricKind::Intrinsic => intrinsic_metric(&cloud, a.eps.expect("required by clap"))?,
    };
    let f = rips_filtration(&metric, a.alpha, a.cap)?;
    emit(a.output.as_deref(), stdout, |w| {
        write_json(w, &ComplexDoc::from_filtration(&f))
    })
}

fn cech(a: CechArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cloud = load_cloud(&a.input)?;
    let f = cech_filtration(&cloud, a.alpha, a.cap)?;
    emit(a.output.as_deref(), stdout, |w| {
        write_json(w, &ComplexDoc::from_filtration(&f))
    })
}

fn deps(a: DepsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cloud = load_cloud(&a.input)?;
    let m = intrinsic_metric(&cloud, a.eps)?;
    emit(a.output.as_deref(), stdout, |w| write_matrix(w, m.len(), m.as_slice()))
}

fn persist(a: PersistArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let kind = a.filtration.unwrap_or(match a.theorem {
        Some(TheoremArg::Cech) => FiltrationKind::Cech,
        _ => FiltrationKind::Rips,
    });
    // Scale pair (and dimensions) to query, if any; validated up front.
    let queries: Option<(Vec<usize>, f64, f64)> = match (&a.query, a.theorem) {
        (Some(q), _) => {
            let k = q[0];
            if !(k >= 0.0 && k.fract() == 0.0) {
                return Err(CliError::Usage(format!(
                    "query dimension must be a whole number, got {k}"
                )));
            }
            Some((vec![k as usize], q[1], q[2]))
        }
        (None, Some(t)) => {
            let theorem = Theorem::from(t);
            let expected = match theorem {
                Theorem::Rips => FiltrationKind::Rips,
                Theorem::Cech => FiltrationKind::Cech,
                Theorem::Graph => return Err(CliError::Usage("persist supports --theorem rips|cech".into())),
            };
            if kind != expected {
                return Err(CliError::Usage(format!(
                    "--theorem {} needs the matching filtration",
                    theorem.name()
                )));
            }
            let eps = a.eps.ok_or_else(|| CliError::Usage("--theorem needs --eps".into()))?;
            let hausdorff = a
                .hausdorff
                .ok_or_else(|| CliError::Usage("--theorem needs --hausdorff".into()))?;
            let shape = a.shape.resolve()?;
            let params = Params::merge(a.delta, a.rho, None, shape.as_ref());
            let report = params.condition(theorem, hausdorff, eps)?;
            require_passed(&report)?;
            let (s, t) = theorem.scale_pair(eps, params.delta.expect("checked by condition"));
            Some(((0..a.cap).collect(), s, t))
        }
        (None, None) => None,
    };
    let cloud = load_cloud(&a.input)?;
    let top = match &queries {
        Some((_, _, t)) => a.max_scale.unwrap_or(*t).max(*t),
        None => a.max_scale.unwrap_or_else(|| cloud.diameter()),
    };
    let f: Filtration = match kind {
        FiltrationKind::Rips => rips_filtration(&MetricMatrix::euclidean(&cloud), top, a.cap)?,
        FiltrationKind::Cech => cech_filtration(&cloud, top, a.cap)?,
        FiltrationKind::IntrinsicRips => {
            let eps = a
                .eps
                .ok_or_else(|| CliError::Usage("intrinsic-rips needs --eps".into()))?;
            rips_filtration(&intrinsic_metric(&cloud, eps)?, top, a.cap)?
        }
    };
    let d = compute_persistence(&f)?;
    emit(a.output.as_deref(), stdout, |w| match &queries {
        None => write_barcode(w, &d),
        Some((dims, s, t)) if a.query.is_some() => {
            let b = d.persistent_betti(BettiQuery::new(dims[0], *s, *t)?)?;
            writeln!(w, "{b}")?;
            Ok(())
        }
        Some((dims, s, t)) => {
            for &k in dims {
                let b = d.persistent_betti(BettiQuery::new(k, *s, *t)?)?;
                writeln!(w, "{k} {} {} {b}", num(*s), num(*t))?;
            }
            Ok(())
        }
    })
}

fn betti(a: BettiArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let f = load_json::<ComplexDoc>(&a.input)?.to_filtration()?;
    let complex = match a.at {
        Some(x) => f.complex_at(x),
        None => f.complex_at(f.max_value()),
    };
    if complex.is_empty() {
        return Err(CliError::Invalid("complex is empty at that scale".into()));
    }
    let b: Vec<String> = betti_numbers(&complex).iter().map(ToString::to_string).collect();
    writeln!(stdout, "{}", b.join(" "))?;
    Ok(())
}

fn reconstruct(a: ReconstructArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let shape = a.shape.resolve()?;
    let condition = match a.hausdorff {
        Some(h) => {
            let params = Params::merge(Some(a.delta), None, a.b, shape.as_ref());
            let report = params.condition(Theorem::Graph, h, a.eps)?;
            require_passed(&report)?;
            Some(report)
        }
        None => None,
    };
    let cloud = load_cloud(&a.input)?;
    let shadow = reconstruct_graph(&cloud, a.eps, a.delta)?;
    let report = reconstruction_report(&shadow, shape.as_ref(), a.resolution)?;
    if let Some(p) = &a.output {
        emit(Some(p), stdout, |w| write_json(w, &ShadowDoc::from_shadow(&shadow)))?;
    }
    if let Some(p) = &a.svg {
        let text = svg::render(Some(&shadow), None);
        emit(Some(p), stdout, |w| Ok(w.write_all(text.as_bytes())?))?;
    }
    write_json(stdout, &ReportDoc::new(&report, condition.as_ref()))
}

fn validate(a: ValidateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let shape = a.shape.resolve()?;
    let params = Params::merge(a.delta, a.rho, a.b, shape.as_ref());
    let report = params.condition(a.theorem.into(), a.hausdorff, a.eps)?;
    write_json(stdout, &crate::json::ConditionDoc::from(&report))?;
    require_passed(&report)
}

fn render(a: RenderArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let shadow = match &a.shadow {
        Some(p) => Some(load_json::<ShadowDoc>(p)?.to_shadow()?),
        None => None,
    };
    let cloud = match &a.cloud {
        Some(p) => Some(load_cloud(p)?),
        None => None,
    };
    let text = svg::render(shadow.as_ref(), cloud.as_ref());
    emit(a.output.as_deref(), stdout, |w| Ok(w.write_all(text.as_bytes())?))
}
