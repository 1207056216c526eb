//! Library side of the `convexclass` command: configuration, dataset files,
//! model documents and the four commands. The binary only parses flags.

pub mod config;
pub mod dataset;
pub mod persist;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::classify::{fit_complete, predict_complete, FitOptions, FIT_VOLUME_MC_SAMPLES};
use crate::error::{Error, Result};
use crate::geometry::{build_hull, volume, HullEstimate, VolumeEstimate, DEFAULT_FALLBACK_RADIUS};
use crate::harness::{consistency_curve, hull_convergence_curve, stream_rng};
use crate::missing::{fit_missing, predict_missing, Bandwidth, KernelKind, KernelSpec, Layout};

use config::{Experiment, RawConfig};
use persist::ModelFile;

pub const CONSISTENCY_CSV: &str = "consistency.csv";
pub const CONSISTENCY_SUMMARY: &str = "consistency_summary.json";
pub const HULL_CSV: &str = "hull_convergence.csv";
pub const HULL_SUMMARY: &str = "hull_convergence_summary.json";

/// Flag values that override the configuration file.
#[derive(Clone, Debug, Default)]
pub struct SimulateArgs {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub mc_test_points: Option<usize>,
    pub kernel: Option<String>,
    pub bandwidth_c: Option<f64>,
    pub fallback_radius: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulateOutput {
    pub csv: PathBuf,
    pub summary: PathBuf,
    pub rows: usize,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Runs the experiment described by a configuration file and writes its CSV
/// table and JSON summary to the output directory.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<SimulateOutput> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| Error::io(&args.config, e))?;
    let mut raw = RawConfig::parse(&text)?;
    if let Some(s) = args.seed {
        raw.set("seed", s.to_string());
    }
    if let Some(m) = args.mc_test_points {
        raw.set("mc_test_points", m.to_string());
    }
    if let Some(k) = &args.kernel {
        raw.set("kernel.type", k.clone());
    }
    if let Some(c) = args.bandwidth_c {
        raw.set("kernel.bandwidth_c", c.to_string());
    }
    if let Some(r) = args.fallback_radius {
        raw.set("fallback_radius", r.to_string());
    }
    let dir = match &args.out {
        Some(d) => d.clone(),
        None => raw.output_dir()?,
    };
    let experiment = raw.experiment()?;
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut csv = Vec::new();
    let (csv_name, summary_name, summary, rows) = match experiment {
        Experiment::Consistency(cfg) => {
            let report = consistency_curve(&cfg)?;
            report.write_csv(&mut csv)?;
            (CONSISTENCY_CSV, CONSISTENCY_SUMMARY, report.summary_json()?, report.cells.len())
        }
        Experiment::Hull(cfg) => {
            let report = hull_convergence_curve(&cfg)?;
            report.write_csv(&mut csv)?;
            (HULL_CSV, HULL_SUMMARY, report.summary_json()?, report.rows.len())
        }
    };
    let out = SimulateOutput {
        csv: dir.join(csv_name),
        summary: dir.join(summary_name),
        rows,
    };
    write_file(&out.csv, &csv)?;
    write_file(&out.summary, summary.as_bytes())?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Complete,
    Missing,
}

impl ModelKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(ModelKind::Complete),
            "missing" => Ok(ModelKind::Missing),
            other => Err(Error::input(format!("unknown kind `{other}` (expected complete or missing)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FitArgs {
    pub data: PathBuf,
    pub kind: ModelKind,
    pub d: Option<usize>,
    pub s: Option<usize>,
    pub kernel: KernelSpec,
    pub fallback_radius: f64,
    pub seed: u64,
    pub model_out: PathBuf,
}

impl FitArgs {
    pub fn new(data: impl Into<PathBuf>, kind: ModelKind, model_out: impl Into<PathBuf>) -> Self {
        FitArgs {
            data: data.into(),
            kind,
            d: None,
            s: None,
            kernel: KernelSpec::default(),
            fallback_radius: DEFAULT_FALLBACK_RADIUS,
            seed: 0,
            model_out: model_out.into(),
        }
    }
}

/// Kernel flags: a kernel name and the constant of the bandwidth rule.
pub fn kernel_from_flags(kernel: Option<&str>, bandwidth_c: Option<f64>) -> Result<KernelSpec> {
    let kind = kernel.map(KernelKind::parse).transpose()?.unwrap_or(KernelKind::Boxcar);
    let c = bandwidth_c.unwrap_or(1.0);
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::input(format!("bandwidth-c must be positive, got {c}")));
    }
    Ok(KernelSpec {
        kind,
        bandwidth: Bandwidth::Rule { c },
    })
}

fn describe_volume(v: &VolumeEstimate) -> String {
    if v.exact {
        format!("{} (exact)", v.value)
    } else {
        format!("{} (monte carlo, stderr {})", v.value, v.std_error)
    }
}

fn describe_hull(out: &mut String, name: &str, h: &HullEstimate, v: &VolumeEstimate) {
    let shape = if h.is_fallback() { ", fallback ball" } else { "" };
    let _ = writeln!(
        out,
        "{name}: points = {}, vertices = {}, affine_dim = {}, volume = {}{shape}",
        h.sample_count,
        h.vertex_count(),
        h.affine_dim(),
        describe_volume(v)
    );
}

/// Human-readable summary of a fitted model.
pub fn describe_model(model: &ModelFile) -> String {
    let mut out = String::new();
    match model {
        ModelFile::Complete(m) => {
            let _ = writeln!(out, "kind = complete\nn = {}\np_hat = {}", m.n, m.p_hat);
            describe_hull(&mut out, "hull1", &m.hull1, &m.vol1);
            describe_hull(&mut out, "hull0", &m.hull0, &m.vol0);
        }
        ModelFile::Missing(m) => {
            let _ = writeln!(
                out,
                "kind = missing\nn = {}\np_hat = {}\nd = {}, s = {}\nkernel = {}, bandwidth = {}",
                m.n,
                m.p_hat,
                m.layout.d,
                m.layout.s,
                m.kernel.kind.name(),
                m.bandwidth
            );
            describe_hull(&mut out, "hull1_z", &m.hull1_z, &m.vol1_z);
            describe_hull(&mut out, "hull0_z", &m.hull0_z, &m.vol0_z);
            describe_hull(&mut out, "hull1_x", &m.hull1_x, &m.vol1_x);
            describe_hull(&mut out, "hull0_x", &m.hull0_x, &m.vol0_x);
        }
    }
    out
}

/// Fits a model from a dataset file, saves it and returns its summary.
pub fn cmd_fit(args: &FitArgs) -> Result<String> {
    let opts = FitOptions {
        fallback_radius: args.fallback_radius,
        seed: args.seed,
        mc_volume_samples: FIT_VOLUME_MC_SAMPLES,
    };
    let model = match args.kind {
        ModelKind::Complete => {
            if args.s.is_some_and(|s| s > 0) {
                return Err(Error::input("--s applies to missing-data models only"));
            }
            let data = dataset::read_complete(&args.data, args.d)?.into_values();
            ModelFile::Complete(fit_complete(&data, opts)?)
        }
        ModelKind::Missing => {
            let (Some(d), Some(s)) = (args.d, args.s) else {
                return Err(Error::input("kind missing needs both --d and --s"));
            };
            let layout = Layout::new(d, s)?;
            let data = dataset::read_missing(&args.data, layout)?.into_values();
            ModelFile::Missing(fit_missing(&data, layout, args.kernel, opts)?)
        }
    };
    model.save(&args.model_out)?;
    Ok(describe_model(&model))
}

/// Writes one predicted label per query row to `out` and returns the count.
pub fn cmd_predict(model_path: &Path, query_path: &Path, out: &mut dyn Write) -> Result<usize> {
    let model = ModelFile::load(model_path)?;
    let (d, s) = match &model {
        ModelFile::Complete(m) => (m.dim(), 0),
        ModelFile::Missing(m) => (m.layout.d, m.layout.s),
    };
    let queries = dataset::read_queries(query_path, d, s)?;
    let mut text = String::new();
    for (line, (x, v)) in &queries.rows {
        let label = match &model {
            ModelFile::Complete(m) => predict_complete(m, x),
            ModelFile::Missing(m) => predict_missing(m, x, v.as_deref()),
        }
        .map_err(|e| match e {
            Error::Numerical { .. } => e,
            other => Error::Row {
                path: query_path.to_path_buf(),
                line: *line,
                message: other.to_string(),
            },
        })?;
        let _ = writeln!(text, "{label}");
    }
    out.write_all(text.as_bytes()).map_err(|e| Error::io("prediction output", e))?;
    Ok(queries.rows.len())
}

#[derive(Clone, Debug)]
pub struct HullArgs {
    pub data: PathBuf,
    /// Use only the first `d` columns; all columns when `None`.
    pub d: Option<usize>,
    pub out: Option<PathBuf>,
    pub fallback_radius: f64,
    pub seed: u64,
    pub mc_samples: usize,
}

impl HullArgs {
    pub fn new(data: impl Into<PathBuf>) -> Self {
        HullArgs {
            data: data.into(),
            d: None,
            out: None,
            fallback_radius: DEFAULT_FALLBACK_RADIUS,
            seed: 0,
            mc_samples: FIT_VOLUME_MC_SAMPLES,
        }
    }
}

/// Builds the hull of a point file and reports its size, dimension and volume.
pub fn cmd_hull(args: &HullArgs) -> Result<String> {
    let rows = dataset::read_points(&args.data, args.d)?;
    let dim = match (args.d, rows.rows.first()) {
        (Some(d), _) => d,
        (None, Some((_, p))) => p.dim(),
        (None, None) => return Err(Error::input("point file has no rows; pass --d for the fallback ball")),
    };
    let pts = rows.into_values();
    let hull = build_hull(&pts, dim, args.fallback_radius)?;
    let vol = volume(&hull, args.mc_samples, &mut stream_rng(args.seed, 0))?;
    if let Some(path) = &args.out {
        write_file(path, persist::hull_to_json(&hull)?.as_bytes())?;
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "points = {}\nvertices = {}\naffine_dim = {}\nvolume = {}",
        pts.len(),
        hull.vertex_count(),
        hull.affine_dim(),
        describe_volume(&vol)
    );
    if hull.is_fallback() {
        out.push_str("fallback ball\n");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn fit_reports_the_prior() {
        let dir = tempfile::tempdir().unwrap();
        let data = write(dir.path(), "d.csv", "x1,x2,y\n0,0,1\n1,0,1\n0,1,0\n1,1,0\n");
        let model = dir.path().join("m.json");
        let text = cmd_fit(&FitArgs::new(&data, ModelKind::Complete, &model)).unwrap();
        assert!(text.contains("p_hat = 0.5\n"), "{text}");
        assert!(model.exists());
    }

    #[test]
    fn missing_fit_needs_layout() {
        let dir = tempfile::tempdir().unwrap();
        let data = write(dir.path(), "d.csv", "x1,x2,v1,y\n0,0,1,1\n");
        let args = FitArgs::new(&data, ModelKind::Missing, dir.path().join("m.json"));
        assert!(matches!(cmd_fit(&args), Err(Error::Input(_))));
    }

    #[test]
    fn hull_of_square_corners() {
        let dir = tempfile::tempdir().unwrap();
        let data = write(dir.path(), "p.csv", "a,b\n0,0\n1,0\n0,1\n1,1\n");
        let text = cmd_hull(&HullArgs::new(&data)).unwrap();
        assert!(text.contains("vertices = 4\n") && text.contains("volume = 1 (exact)"), "{text}");
        let data = write(dir.path(), "q.csv", "a,b\n0.5,0.5\n");
        let text = cmd_hull(&HullArgs::new(&data)).unwrap();
        assert!(text.contains("affine_dim = 0\n") && text.contains("volume = 0 (exact)"), "{text}");
    }

    #[test]
    fn kernel_flags() {
        let k = kernel_from_flags(Some("epanechnikov"), Some(2.0)).unwrap();
        assert_eq!(k.kind, KernelKind::Epanechnikov);
        assert!(kernel_from_flags(Some("tophat"), None).is_err());
        assert!(kernel_from_flags(None, Some(0.0)).is_err());
    }
}
