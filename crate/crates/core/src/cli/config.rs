//! Flat `key = value` experiment configuration.
//!
//! One entry per line, `#` starts a comment, blank lines are ignored. Keys are
//! dotted paths. Lists are comma separated; point lists separate points with
//! `;`. Unknown and repeated keys are errors, so a typo never silently falls
//! back to a default.
//!
//! ```text
//! experiment = consistency        # or hull
//! seed = 1
//! sizes = 100, 1000, 5000
//! replicates = 10
//! mc_test_points = 20000
//! bayes_test_points = 100000
//! fallback_radius = 1.0
//! output_dir = out
//!
//! scenario.kind = complete        # or missing
//! scenario.p = 0.5
//! scenario.c1.type = box
//! scenario.c1.lower = 0, 0
//! scenario.c1.upper = 1, 1
//! scenario.c0.type = ball
//! scenario.c0.center = 1, 0.5
//! scenario.c0.radius = 0.5
//! ```
//!
//! Bodies: `box` (`lower`, `upper`), `ball` (`center`, `radius`), `simplex`
//! and `polytope` (`vertices = 0,0; 1,0; 0,1`). Missing scenarios add
//! `scenario.d`, `scenario.s`, `scenario.q1.*`, `scenario.q0.*` (`type` is
//! `constant` with `value`, or `logistic` with `weights`, `bias`, `lower`,
//! `upper`) and `kernel.type`, `kernel.bandwidth_c` or `kernel.bandwidth`.
//! Consistency experiments score test draws with `error_estimator =
//! conditional` (default) or `indicator`.
//! Hull experiments read the body from `scenario.c1` and accept `scenario.p`
//! in `(0, 1]`, `n_probe`, `mc_samples` and `force_empty`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bodies::ConvexBody;
use crate::classify::{BayesOracleComplete, FIT_VOLUME_MC_SAMPLES};
use crate::error::{Error, Result};
use crate::geometry::{Point, DEFAULT_FALLBACK_RADIUS};
use crate::harness::{ErrorEstimator, ExperimentConfig, HullConvergenceConfig, Scenario};
use crate::missing::{
    Bandwidth, BayesOracleMissing, KernelKind, KernelSpec, Layout, MissingnessMechanism,
    Propensity, DEFAULT_PROPENSITY_FLOOR,
};

const KNOWN_KEYS: &[&str] = &[
    "experiment",
    "seed",
    "sizes",
    "replicates",
    "mc_test_points",
    "bayes_test_points",
    "mc_volume_samples",
    "error_estimator",
    "fallback_radius",
    "output_dir",
    "n_probe",
    "mc_samples",
    "force_empty",
    "scenario.kind",
    "scenario.p",
    "scenario.d",
    "scenario.s",
    "kernel.type",
    "kernel.bandwidth_c",
    "kernel.bandwidth",
];
const BODY_FIELDS: &[&str] = &["type", "lower", "upper", "center", "radius", "vertices"];
const PROPENSITY_FIELDS: &[&str] = &["type", "value", "weights", "bias", "lower", "upper"];

fn is_known(key: &str) -> bool {
    if KNOWN_KEYS.contains(&key) {
        return true;
    }
    let field_of = |prefix: &str| key.strip_prefix(prefix);
    for body in ["scenario.c1.", "scenario.c0."] {
        if field_of(body).is_some_and(|f| BODY_FIELDS.contains(&f)) {
            return true;
        }
    }
    for q in ["scenario.q1.", "scenario.q0."] {
        if field_of(q).is_some_and(|f| PROPENSITY_FIELDS.contains(&f)) {
            return true;
        }
    }
    false
}

/// Parsed entries with the line each came from.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, usize)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
                key: content.to_string(),
                line: Some(line),
                message: "expected `key = value`".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !is_known(key) {
                return Err(Error::Config {
                    key: key.into(),
                    line: Some(line),
                    message: "unknown key".into(),
                });
            }
            if let Some((_, first)) = entries.insert(key.to_string(), (value.to_string(), line)) {
                return Err(Error::Config {
                    key: key.into(),
                    line: Some(line),
                    message: format!("repeated key, first set at line {first}"),
                });
            }
        }
        Ok(RawConfig { entries })
    }

    /// Sets or replaces a value, as a command-line override does.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), (value.into(), 0));
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.entries.get(key).map(|(_, l)| *l).filter(|&l| l > 0)
    }

    fn err(&self, key: &str, message: impl Into<String>) -> Error {
        Error::Config {
            key: key.into(),
            line: self.line(key),
            message: message.into(),
        }
    }

    /// Attaches the key path to an error raised while validating its value.
    fn wrap(&self, key: &str, e: Error) -> Error {
        match e {
            Error::Config { .. } => e,
            other => self.err(key, other.to_string()),
        }
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.raw(key).ok_or_else(|| self.err(key, "required key is missing"))
    }

    fn parse_value<T: FromStr>(&self, key: &str, text: &str) -> Result<T> {
        text.trim()
            .parse()
            .map_err(|_| self.err(key, format!("cannot parse `{}`", text.trim())))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.raw(key).map(|v| self.parse_value(key, v)).transpose()
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        let v = self.required(key)?;
        self.parse_value(key, v)
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let v = self.required(key)?;
        v.split(',').map(|item| self.parse_value(key, item)).collect()
    }

    fn points(&self, key: &str) -> Result<Vec<Point>> {
        let v = self.required(key)?;
        v.split(';')
            .map(|chunk| {
                let coords = chunk
                    .split(',')
                    .map(|c| self.parse_value(key, c))
                    .collect::<Result<Vec<f64>>>()?;
                Point::new(coords).map_err(|e| self.wrap(key, e))
            })
            .collect()
    }

    fn body(&self, prefix: &str) -> Result<ConvexBody> {
        let key = |f: &str| format!("{prefix}.{f}");
        let kind_key = key("type");
        let kind: String = self.require(&kind_key)?;
        let built = match kind.as_str() {
            "box" => ConvexBody::boxed(self.list(&key("lower"))?, self.list(&key("upper"))?),
            "ball" => {
                let center = Point::new(self.list(&key("center"))?).map_err(|e| self.wrap(&key("center"), e))?;
                ConvexBody::ball(center, self.require(&key("radius"))?)
            }
            "simplex" => ConvexBody::simplex(self.points(&key("vertices"))?),
            "polytope" => ConvexBody::polytope(&self.points(&key("vertices"))?),
            other => {
                return Err(self.err(&kind_key, format!("unknown body type `{other}`")));
            }
        };
        built.map_err(|e| self.wrap(&kind_key, e))
    }

    fn propensity(&self, prefix: &str) -> Result<Propensity> {
        let key = |f: &str| format!("{prefix}.{f}");
        let kind_key = key("type");
        let kind: String = self.require(&kind_key)?;
        match kind.as_str() {
            "constant" => Ok(Propensity::constant(self.require(&key("value"))?)),
            "logistic" => Ok(Propensity::Logistic {
                weights: self.list(&key("weights"))?,
                bias: self.require(&key("bias"))?,
                lower: self.require(&key("lower"))?,
                upper: self.require(&key("upper"))?,
            }),
            other => Err(self.err(&kind_key, format!("unknown propensity type `{other}`"))),
        }
    }

    fn prior(&self, allow_one: bool) -> Result<f64> {
        let p: f64 = self.require("scenario.p")?;
        let ok = p > 0.0 && (p < 1.0 || (allow_one && p == 1.0));
        if !ok {
            let range = if allow_one { "(0, 1]" } else { "(0, 1)" };
            return Err(self.err("scenario.p", format!("must lie in {range}, got {p}")));
        }
        Ok(p)
    }

    fn kernel(&self) -> Result<KernelSpec> {
        let kind = match self.raw("kernel.type") {
            Some(k) => KernelKind::parse(k).map_err(|e| self.wrap("kernel.type", e))?,
            None => KernelKind::Boxcar,
        };
        let bandwidth = match (self.get::<f64>("kernel.bandwidth")?, self.get::<f64>("kernel.bandwidth_c")?) {
            (Some(_), Some(_)) => {
                return Err(self.err("kernel.bandwidth", "set either kernel.bandwidth or kernel.bandwidth_c"));
            }
            (Some(h), None) => {
                check_positive(h).map_err(|m| self.err("kernel.bandwidth", m))?;
                Bandwidth::Fixed { h }
            }
            (None, c) => {
                let c = c.unwrap_or(1.0);
                check_positive(c).map_err(|m| self.err("kernel.bandwidth_c", m))?;
                Bandwidth::Rule { c }
            }
        };
        Ok(KernelSpec { kind, bandwidth })
    }

    fn positive_count(&self, key: &str, default: Option<usize>) -> Result<usize> {
        let v = match default {
            Some(d) => self.get_or(key, d)?,
            None => self.require(key)?,
        };
        if v == 0 {
            return Err(self.err(key, "must be at least 1"));
        }
        Ok(v)
    }

    fn sizes(&self) -> Result<Vec<usize>> {
        let sizes: Vec<usize> = self.list("sizes")?;
        if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes.first() == Some(&0) {
            return Err(self.err("sizes", "must be positive and strictly increasing"));
        }
        Ok(sizes)
    }

    fn fallback_radius(&self) -> Result<f64> {
        let r = self.get_or("fallback_radius", DEFAULT_FALLBACK_RADIUS)?;
        check_positive(r).map_err(|m| self.err("fallback_radius", m))?;
        Ok(r)
    }

    pub fn experiment(&self) -> Result<Experiment> {
        let kind: String = self.get_or("experiment", "consistency".to_string())?;
        match kind.as_str() {
            "consistency" => self.consistency().map(Experiment::Consistency),
            "hull" => self.hull_convergence().map(Experiment::Hull),
            other => Err(self.err("experiment", format!("unknown experiment `{other}`"))),
        }
    }

    fn consistency(&self) -> Result<ExperimentConfig> {
        let p = self.prior(false)?;
        let c1 = self.body("scenario.c1")?;
        let c0 = self.body("scenario.c0")?;
        let kind: String = self.get_or("scenario.kind", "complete".to_string())?;
        let scenario = match kind.as_str() {
            "complete" => Scenario::Complete(
                BayesOracleComplete::new(c1, c0, p).map_err(|e| self.wrap("scenario.c0", e))?,
            ),
            "missing" => {
                let layout = Layout::new(self.require("scenario.d")?, self.require("scenario.s")?)
                    .map_err(|e| self.wrap("scenario.d", e))?;
                let mech = MissingnessMechanism {
                    q1: self.propensity("scenario.q1")?,
                    q0: self.propensity("scenario.q0")?,
                };
                mech.check_bounds(DEFAULT_PROPENSITY_FLOOR)
                    .map_err(|e| self.wrap("scenario.q1.type", e))?;
                Scenario::Missing(
                    BayesOracleMissing::new(c1, c0, p, mech, layout)
                        .map_err(|e| self.wrap("scenario.c0", e))?,
                )
            }
            other => return Err(self.err("scenario.kind", format!("unknown scenario kind `{other}`"))),
        };
        let mut cfg = ExperimentConfig::new(
            scenario,
            self.sizes()?,
            self.positive_count("replicates", None)?,
            self.require("seed")?,
        );
        cfg.mc_test_points = self.positive_count("mc_test_points", Some(cfg.mc_test_points))?;
        cfg.bayes_test_points = self.positive_count("bayes_test_points", Some(cfg.bayes_test_points))?;
        cfg.mc_volume_samples = self.positive_count("mc_volume_samples", Some(FIT_VOLUME_MC_SAMPLES))?;
        cfg.fallback_radius = self.fallback_radius()?;
        cfg.kernel = self.kernel()?;
        if let Some(e) = self.raw("error_estimator") {
            cfg.estimator = ErrorEstimator::parse(e).map_err(|err| self.wrap("error_estimator", err))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn hull_convergence(&self) -> Result<HullConvergenceConfig> {
        let mut cfg = HullConvergenceConfig::new(
            self.body("scenario.c1")?,
            self.sizes()?,
            self.positive_count("replicates", None)?,
            self.require("seed")?,
        );
        cfg.p = if self.raw("scenario.p").is_some() { self.prior(true)? } else { 1.0 };
        cfg.n_probe = self.positive_count("n_probe", Some(cfg.n_probe))?;
        cfg.mc_samples = self.positive_count("mc_samples", Some(cfg.mc_samples))?;
        cfg.fallback_radius = self.fallback_radius()?;
        cfg.force_empty = self.get_or("force_empty", false)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn output_dir(&self) -> Result<PathBuf> {
        Ok(PathBuf::from(self.required("output_dir")?))
    }
}

fn check_positive(v: f64) -> std::result::Result<(), String> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

/// An experiment read from a configuration file.
#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    Consistency(ExperimentConfig),
    Hull(HullConvergenceConfig),
}
