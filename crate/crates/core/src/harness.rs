//! Monte Carlo error estimation and consistency experiments.
//!
//! Seeding: replicate `r` of an experiment with base seed `s` owns the seed
//! `s + r` (wrapping). Within that seed, ChaCha streams separate the training
//! draws, test draws, probes and Monte Carlo integrals, so changing one
//! consumer never shifts another. Training sets for increasing `n` are nested
//! prefixes of one sequence, and the test set is shared across `n` within a
//! replicate. The Bayes error is estimated once per experiment from the base
//! seed on its own stream.
//!
//! Consistency curves score each test draw, by default, with its conditional
//! error probability `P{Y != phi(X) | X}` under the true posterior instead of
//! the 0/1 indicator. Both average to `L(phi)`; the conditional form removes
//! the label noise, which matters where one region decision carries no excess
//! risk (ties on an overlap) but would otherwise move the estimate by
//! `O(m^(-1/2))`.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::classify::{
    bayes_complete, bayes_posterior, fit_complete, predict_complete, BayesOracleComplete, FitOptions, Label,
    LabeledSample, FIT_VOLUME_MC_SAMPLES,
};
use crate::error::{Error, Result};
use crate::geometry::{
    build_hull, hausdorff_estimate, symdiff_measure, volume, Point, DEFAULT_FALLBACK_RADIUS,
};
use crate::missing::{
    bayes_missing, bayes_missing_posterior, fit_missing, gen_missing, predict_missing, BayesOracleMissing, KernelSpec,
    MissingSample, DEFAULT_PROPENSITY_FLOOR,
};

pub const CONSISTENCY_SCHEMA: &str = "convexclass.consistency/1";
pub const CONSISTENCY_SUMMARY_SCHEMA: &str = "convexclass.consistency-summary/1";
pub const HULL_SCHEMA: &str = "convexclass.hull-convergence/1";
pub const HULL_SUMMARY_SCHEMA: &str = "convexclass.hull-convergence-summary/1";

const TRAIN_STREAM: u64 = 1000;
const TEST_STREAM: u64 = 1001;
const BAYES_STREAM: u64 = 1002;
const PROBE_STREAM: u64 = 1003;
const SYMDIFF_STREAM: u64 = 1004;
const VOLUME_STREAM: u64 = 1005;

/// RNG for one consumer of one seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn replicate_seed(base: u64, replicate: usize) -> u64 {
    base.wrapping_add(replicate as u64)
}

/// Generative model of `(X, Y)` or `(X, V, Y, delta)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    Complete(BayesOracleComplete),
    Missing(BayesOracleMissing),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Complete(_) => "complete",
            Scenario::Missing(_) => "missing",
        }
    }

    pub fn prior(&self) -> f64 {
        match self {
            Scenario::Complete(o) => o.p,
            Scenario::Missing(o) => o.p,
        }
    }

    /// One draw: `Y ~ Bernoulli(p)`, then the covariates uniform on the class
    /// body, then (missing scenarios) `delta` from the mechanism. In complete
    /// scenarios `x` is the full vector and `v` is `None`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MissingSample> {
        Ok(self.draw_n(1, rng)?.remove(0))
    }

    pub fn draw_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<MissingSample>> {
        let (c1, c0, p) = match self {
            Scenario::Complete(o) => (&o.c1, &o.c0, o.p),
            Scenario::Missing(o) => (&o.c1, &o.c0, o.p),
        };
        let mut complete = Vec::with_capacity(n);
        for _ in 0..n {
            let y = Label::from_bool(rng.random::<f64>() < p);
            let body = if y == Label::One { c1 } else { c0 };
            complete.push((body.sample_uniform(rng)?, y));
        }
        match self {
            Scenario::Complete(_) => Ok(complete
                .into_iter()
                .map(|(x, y)| MissingSample { x, v: None, y })
                .collect()),
            Scenario::Missing(o) => gen_missing(&complete, &o.mech, o.layout, rng),
        }
    }

    /// The optimal rule for this scenario.
    pub fn bayes(&self, x: &[f64], v: Option<&[f64]>) -> Result<Label> {
        match self {
            Scenario::Complete(o) => bayes_complete(o, x),
            Scenario::Missing(o) => bayes_missing(o, x, v),
        }
    }

    /// True `P{Y = 1}` given the observed part of a draw.
    pub fn posterior(&self, x: &[f64], v: Option<&[f64]>) -> Result<f64> {
        match self {
            Scenario::Complete(o) => bayes_posterior(o, x),
            Scenario::Missing(o) => bayes_missing_posterior(o, x, v),
        }
    }
}

/// How a test draw is scored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorEstimator {
    /// `1{phi(X) != Y}`; binomial standard error.
    Indicator,
    /// `P{Y != phi(X) | X}` from the true posterior; sample standard error.
    Conditional,
}

impl ErrorEstimator {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "indicator" => Ok(ErrorEstimator::Indicator),
            "conditional" => Ok(ErrorEstimator::Conditional),
            other => Err(Error::input(format!(
                "unknown error estimator `{other}` (expected indicator or conditional)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorEstimator::Indicator => "indicator",
            ErrorEstimator::Conditional => "conditional",
        }
    }
}

/// Misclassification rate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub test_points: usize,
}

impl ErrorEstimate {
    fn from_count(wrong: usize, m: usize) -> Self {
        let est = wrong as f64 / m as f64;
        ErrorEstimate {
            estimate: est,
            stderr: (est * (1.0 - est) / m as f64).sqrt(),
            test_points: m,
        }
    }
}

/// Fraction of `test` misclassified by `classifier(x, v)`.
pub fn error_on<F>(mut classifier: F, test: &[MissingSample]) -> Result<ErrorEstimate>
where
    F: FnMut(&[f64], Option<&[f64]>) -> Result<Label>,
{
    if test.is_empty() {
        return Err(Error::input("error estimate needs at least one test point"));
    }
    let mut wrong = 0;
    for s in test {
        if classifier(&s.x, s.v.as_deref())? != s.y {
            wrong += 1;
        }
    }
    Ok(ErrorEstimate::from_count(wrong, test.len()))
}

/// Mean conditional error `P{Y != classifier(X) | X}` over `test`, with the
/// sample standard error of that mean.
pub fn conditional_error_on<F>(mut classifier: F, scenario: &Scenario, test: &[MissingSample]) -> Result<ErrorEstimate>
where
    F: FnMut(&[f64], Option<&[f64]>) -> Result<Label>,
{
    if test.is_empty() {
        return Err(Error::input("error estimate needs at least one test point"));
    }
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for s in test {
        let v = s.v.as_deref();
        let eta = scenario.posterior(&s.x, v)?;
        let term = match classifier(&s.x, v)? {
            Label::One => 1.0 - eta,
            Label::Zero => eta,
        };
        sum += term;
        sum_sq += term * term;
    }
    let m = test.len() as f64;
    let mean = sum / m;
    let var = if test.len() > 1 {
        ((sum_sq - m * mean * mean) / (m - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(ErrorEstimate {
        estimate: mean,
        stderr: (var / m).sqrt(),
        test_points: test.len(),
    })
}

fn score<F>(estimator: ErrorEstimator, classifier: F, scenario: &Scenario, test: &[MissingSample]) -> Result<ErrorEstimate>
where
    F: FnMut(&[f64], Option<&[f64]>) -> Result<Label>,
{
    match estimator {
        ErrorEstimator::Indicator => error_on(classifier, test),
        ErrorEstimator::Conditional => conditional_error_on(classifier, scenario, test),
    }
}

/// Estimates `P{classifier != Y}` from `m` fresh draws of the scenario.
pub fn estimate_error<F, R>(
    classifier: F,
    scenario: &Scenario,
    m: usize,
    rng: &mut R,
) -> Result<ErrorEstimate>
where
    F: FnMut(&[f64], Option<&[f64]>) -> Result<Label>,
    R: Rng + ?Sized,
{
    if m == 0 {
        return Err(Error::input("mc_test_points must be at least 1"));
    }
    let test = scenario.draw_n(m, rng)?;
    error_on(classifier, &test)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub sample_sizes: Vec<usize>,
    pub replicates: usize,
    pub mc_test_points: usize,
    /// Test draws for the single Bayes-error estimate.
    pub bayes_test_points: usize,
    pub seed: u64,
    pub kernel: KernelSpec,
    pub fallback_radius: f64,
    pub mc_volume_samples: usize,
    pub estimator: ErrorEstimator,
}

impl ExperimentConfig {
    pub fn new(scenario: Scenario, sample_sizes: Vec<usize>, replicates: usize, seed: u64) -> Self {
        ExperimentConfig {
            scenario,
            sample_sizes,
            replicates,
            mc_test_points: 20_000,
            bayes_test_points: 100_000,
            seed,
            kernel: KernelSpec::default(),
            fallback_radius: DEFAULT_FALLBACK_RADIUS,
            mc_volume_samples: FIT_VOLUME_MC_SAMPLES,
            estimator: ErrorEstimator::Conditional,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.scenario.prior();
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::input(format!("scenario prior must lie in (0, 1), got {p}")));
        }
        check_sizes(&self.sample_sizes)?;
        if self.replicates == 0 {
            return Err(Error::input("replicates must be at least 1"));
        }
        if self.mc_test_points == 0 || self.bayes_test_points == 0 {
            return Err(Error::input("test point counts must be at least 1"));
        }
        if !(self.fallback_radius > 0.0 && self.fallback_radius.is_finite()) {
            return Err(Error::input("fallback_radius must be positive"));
        }
        if let Scenario::Missing(o) = &self.scenario {
            o.mech.check_bounds(DEFAULT_PROPENSITY_FLOOR)?;
        }
        Ok(())
    }

    fn fit_options(&self, seed: u64) -> FitOptions {
        FitOptions {
            fallback_radius: self.fallback_radius,
            seed,
            mc_volume_samples: self.mc_volume_samples,
        }
    }
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::input("sample_sizes must not be empty"));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("sample_sizes must be strictly increasing"));
    }
    Ok(())
}

/// One `(n, replicate)` cell. `result` is `None` when fitting or prediction
/// failed, with the reason in `failure`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorCell {
    pub n: usize,
    pub replicate: usize,
    pub seed: u64,
    pub result: Option<ErrorEstimate>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub estimator: ErrorEstimator,
    pub seed: u64,
    pub bayes: ErrorEstimate,
    pub cells: Vec<ErrorCell>,
}

/// Per-`n` aggregate over successful replicates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub ok: usize,
    pub failed: usize,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub min: f64,
    pub max: f64,
    /// Median of `L_n` minus the Bayes-error estimate.
    pub median_excess: f64,
    pub median_stderr: f64,
    /// `sqrt(median_stderr^2 + bayes_stderr^2)`.
    pub combined_stderr: f64,
}

fn fit_and_score(
    config: &ExperimentConfig,
    train: &[MissingSample],
    test: &[MissingSample],
    seed: u64,
) -> Result<ErrorEstimate> {
    let opts = config.fit_options(seed);
    match &config.scenario {
        Scenario::Complete(_) => {
            let data: Vec<LabeledSample> = train
                .iter()
                .map(|s| LabeledSample { x: s.x.clone(), y: s.y })
                .collect();
            let model = fit_complete(&data, opts)?;
            score(config.estimator, |x, _| predict_complete(&model, x), &config.scenario, test)
        }
        Scenario::Missing(o) => {
            let model = fit_missing(train, o.layout, config.kernel, opts)?;
            score(config.estimator, |x, v| predict_missing(&model, x, v), &config.scenario, test)
        }
    }
}

fn replicate_cells(config: &ExperimentConfig, replicate: usize) -> Vec<ErrorCell> {
    let seed = replicate_seed(config.seed, replicate);
    let n_max = *config.sample_sizes.last().expect("validated non-empty");
    let data = config
        .scenario
        .draw_n(n_max, &mut stream_rng(seed, TRAIN_STREAM))
        .and_then(|train| {
            let test = config
                .scenario
                .draw_n(config.mc_test_points, &mut stream_rng(seed, TEST_STREAM))?;
            Ok((train, test))
        });
    config
        .sample_sizes
        .iter()
        .map(|&n| {
            let outcome = match &data {
                Ok((train, test)) => fit_and_score(config, &train[..n], test, seed),
                Err(e) => Err(Error::input(format!("drawing data: {e}"))),
            };
            let (result, failure) = match outcome {
                Ok(e) => (Some(e), None),
                Err(e) => (None, Some(e.to_string())),
            };
            ErrorCell {
                n,
                replicate,
                seed,
                result,
                failure,
            }
        })
        .collect()
}

/// Fits the plug-in rule for every `(n, replicate)` and estimates its error on
/// fresh test draws, together with one estimate of the Bayes error.
pub fn consistency_curve(config: &ExperimentConfig) -> Result<ErrorReport> {
    config.validate()?;
    let scenario = &config.scenario;
    let bayes_test = scenario.draw_n(config.bayes_test_points, &mut stream_rng(config.seed, BAYES_STREAM))?;
    let bayes = score(config.estimator, |x, v| scenario.bayes(x, v), scenario, &bayes_test)?;
    let cells = (0..config.replicates)
        .into_par_iter()
        .map(|r| replicate_cells(config, r))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(ErrorReport {
        kind: scenario.kind().to_string(),
        estimator: config.estimator,
        seed: config.seed,
        bayes,
        cells,
    })
}

/// Linear-interpolation quantile of already sorted values.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    quantile(&v, 0.5)
}

/// Distinct `n` values in first-seen order.
fn sizes_of<I: Iterator<Item = usize>>(ns: I) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for n in ns {
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ErrorReport {
    pub fn summary(&self) -> Vec<SizeSummary> {
        sizes_of(self.cells.iter().map(|c| c.n))
            .into_iter()
            .map(|n| {
                let cells: Vec<_> = self.cells.iter().filter(|c| c.n == n).collect();
                let mut est: Vec<f64> =
                    cells.iter().filter_map(|c| c.result.map(|r| r.estimate)).collect();
                est.sort_by(f64::total_cmp);
                let se: Vec<f64> = cells.iter().filter_map(|c| c.result.map(|r| r.stderr)).collect();
                let med = quantile(&est, 0.5);
                let med_se = median(&se);
                SizeSummary {
                    n,
                    ok: est.len(),
                    failed: cells.len() - est.len(),
                    median: med,
                    q25: quantile(&est, 0.25),
                    q75: quantile(&est, 0.75),
                    min: est.first().copied().unwrap_or(f64::NAN),
                    max: est.last().copied().unwrap_or(f64::NAN),
                    median_excess: med - self.bayes.estimate,
                    median_stderr: med_se,
                    combined_stderr: (med_se * med_se + self.bayes.stderr * self.bayes.stderr).sqrt(),
                }
            })
            .collect()
    }

    /// One row per cell. Failed cells leave the numeric columns empty and
    /// carry the failure in `status`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "schema", "kind", "estimator", "n", "replicate", "seed", "l_n", "stderr", "test_points", "l_bayes",
            "l_bayes_stderr", "status",
        ])?;
        for c in &self.cells {
            w.write_record([
                CONSISTENCY_SCHEMA.to_string(),
                self.kind.clone(),
                self.estimator.name().to_string(),
                c.n.to_string(),
                c.replicate.to_string(),
                c.seed.to_string(),
                fmt_opt(c.result.map(|r| r.estimate)),
                fmt_opt(c.result.map(|r| r.stderr)),
                c.result.map(|r| r.test_points.to_string()).unwrap_or_default(),
                self.bayes.estimate.to_string(),
                self.bayes.stderr.to_string(),
                c.failure.clone().unwrap_or_else(|| "ok".into()),
            ])?;
        }
        w.flush().map_err(|e| Error::io("CSV output", e))?;
        Ok(())
    }

    pub fn summary_json(&self) -> Result<String> {
        let doc = serde_json::json!({
            "schema": CONSISTENCY_SUMMARY_SCHEMA,
            "kind": self.kind,
            "estimator": self.estimator,
            "seed": self.seed,
            "bayes_error": self.bayes,
            "sizes": self.summary(),
        });
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullConvergenceConfig {
    pub body: ConvexBody,
    /// Probability that a draw lands in the class being estimated.
    pub p: f64,
    pub sample_sizes: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
    pub n_probe: usize,
    pub mc_samples: usize,
    pub fallback_radius: f64,
    /// Adds one row with `n = 0`, whose hull is the fallback ball.
    pub force_empty: bool,
}

impl HullConvergenceConfig {
    pub fn new(body: ConvexBody, sample_sizes: Vec<usize>, replicates: usize, seed: u64) -> Self {
        HullConvergenceConfig {
            body,
            p: 1.0,
            sample_sizes,
            replicates,
            seed,
            n_probe: 2000,
            mc_samples: 20_000,
            fallback_radius: DEFAULT_FALLBACK_RADIUS,
            force_empty: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.body.validate()?;
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::input(format!("p must lie in (0, 1], got {}", self.p)));
        }
        check_sizes(&self.sample_sizes)?;
        if self.replicates == 0 || self.n_probe == 0 || self.mc_samples == 0 {
            return Err(Error::input("replicates, n_probe and mc_samples must be at least 1"));
        }
        if !(self.fallback_radius > 0.0 && self.fallback_radius.is_finite()) {
            return Err(Error::input("fallback_radius must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullRow {
    pub n: usize,
    pub replicate: usize,
    pub seed: u64,
    /// Points that fell in the body, `N ~ Binomial(n, p)`.
    pub sample_count: usize,
    pub fallback: bool,
    pub hausdorff: f64,
    pub symdiff: f64,
    pub symdiff_stderr: f64,
    pub volume: f64,
    pub volume_stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub seed: u64,
    pub rows: Vec<HullRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullSizeSummary {
    pub n: usize,
    pub rows: usize,
    pub median_hausdorff: f64,
    pub median_symdiff: f64,
    pub median_volume: f64,
}

fn hull_row(config: &HullConvergenceConfig, replicate: usize, n: usize, pts: &[Point]) -> Result<HullRow> {
    let seed = replicate_seed(config.seed, replicate);
    let hull = build_hull(pts, config.body.dim(), config.fallback_radius)?;
    // Same probes and integration points for every n of a replicate.
    let hausdorff = hausdorff_estimate(
        &hull,
        &config.body,
        config.n_probe,
        &mut stream_rng(seed, PROBE_STREAM),
    )?;
    let sd = symdiff_measure(
        &hull,
        &config.body,
        config.mc_samples,
        &mut stream_rng(seed, SYMDIFF_STREAM),
    )?;
    let vol = volume(&hull, config.mc_samples, &mut stream_rng(seed, VOLUME_STREAM))?;
    Ok(HullRow {
        n,
        replicate,
        seed,
        sample_count: pts.len(),
        fallback: hull.is_fallback(),
        hausdorff,
        symdiff: sd.value,
        symdiff_stderr: sd.std_error,
        volume: vol.value,
        volume_stderr: vol.std_error,
    })
}

fn hull_replicate(config: &HullConvergenceConfig, replicate: usize) -> Result<Vec<HullRow>> {
    let seed = replicate_seed(config.seed, replicate);
    let mut rng = stream_rng(seed, TRAIN_STREAM);
    let n_max = *config.sample_sizes.last().expect("validated non-empty");
    // Each of the n draws lands in the body with probability p; the points in
    // the body form a prefix-nested sequence, so N_n is the count of hits
    // among the first n draws.
    let mut hits = Vec::with_capacity(n_max);
    let mut pts = Vec::new();
    for _ in 0..n_max {
        let hit = rng.random::<f64>() < config.p;
        if hit {
            pts.push(config.body.sample_uniform(&mut rng)?);
        }
        hits.push(pts.len());
    }
    config
        .sample_sizes
        .iter()
        .map(|&n| {
            let count = if n == 0 { 0 } else { hits[n - 1] };
            hull_row(config, replicate, n, &pts[..count])
        })
        .collect()
}

/// Hausdorff, symmetric-difference and volume discrepancies of the hull of
/// `N ~ Binomial(n, p)` uniform points on the body, per `(n, replicate)`.
pub fn hull_convergence_curve(config: &HullConvergenceConfig) -> Result<HullReport> {
    config.validate()?;
    let mut rows = Vec::new();
    if config.force_empty {
        rows.push(hull_row(config, 0, 0, &[])?);
    }
    let per_rep = (0..config.replicates)
        .into_par_iter()
        .map(|r| hull_replicate(config, r))
        .collect::<Vec<_>>();
    for r in per_rep {
        rows.extend(r?);
    }
    rows[usize::from(config.force_empty)..].sort_by_key(|r| (r.n, r.replicate));
    Ok(HullReport {
        seed: config.seed,
        rows,
    })
}

impl HullReport {
    pub fn summary(&self) -> Vec<HullSizeSummary> {
        sizes_of(self.rows.iter().map(|r| r.n))
            .into_iter()
            .map(|n| {
                let rows: Vec<_> = self.rows.iter().filter(|r| r.n == n).collect();
                let col = |f: fn(&HullRow) -> f64| median(&rows.iter().map(|r| f(r)).collect::<Vec<_>>());
                HullSizeSummary {
                    n,
                    rows: rows.len(),
                    median_hausdorff: col(|r| r.hausdorff),
                    median_symdiff: col(|r| r.symdiff),
                    median_volume: col(|r| r.volume),
                }
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "schema", "n", "replicate", "seed", "sample_count", "fallback", "hausdorff", "symdiff",
            "symdiff_stderr", "volume", "volume_stderr",
        ])?;
        for r in &self.rows {
            w.write_record([
                HULL_SCHEMA.to_string(),
                r.n.to_string(),
                r.replicate.to_string(),
                r.seed.to_string(),
                r.sample_count.to_string(),
                r.fallback.to_string(),
                r.hausdorff.to_string(),
                r.symdiff.to_string(),
                r.symdiff_stderr.to_string(),
                r.volume.to_string(),
                r.volume_stderr.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("CSV output", e))?;
        Ok(())
    }

    pub fn summary_json(&self) -> Result<String> {
        let doc = serde_json::json!({
            "schema": HULL_SUMMARY_SCHEMA,
            "seed": self.seed,
            "sizes": self.summary(),
        });
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}
