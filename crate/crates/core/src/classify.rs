//! Complete-data classifiers: the Bayes rule for two uniform classes on convex
//! regions, and its plug-in version built from class-wise convex hulls.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{
    build_hull, check_dim, contains, distance_to_hull, volume, HullEstimate, Point,
    VolumeEstimate, DEFAULT_FALLBACK_RADIUS, DEFAULT_MEMBERSHIP_TOL,
};

/// Monte Carlo samples used for cached hull volumes above three dimensions.
pub const FIT_VOLUME_MC_SAMPLES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Label {
    Zero,
    One,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        match self {
            Label::Zero => 0,
            Label::One => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_u8())
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Zero => Label::One,
            Label::One => Label::Zero,
        }
    }

    pub fn from_bool(one: bool) -> Label {
        if one {
            Label::One
        } else {
            Label::Zero
        }
    }
}

impl TryFrom<u8> for Label {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Label::Zero),
            1 => Ok(Label::One),
            other => Err(Error::input(format!("label must be 0 or 1, got {other}"))),
        }
    }
}

impl From<Label> for u8 {
    fn from(l: Label) -> u8 {
        l.as_u8()
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    pub x: Point,
    pub y: Label,
}

/// Four-region decision shared by the oracle and plug-in rules.
///
/// `weight1` and `weight0` are the class scores compared on the intersection
/// (strict `>` gives class 1, ties give 0). Returns `None` outside both regions.
pub(crate) fn region_rule(in1: bool, in0: bool, weight1: f64, weight0: f64) -> Option<Label> {
    match (in1, in0) {
        (true, false) => Some(Label::One),
        (false, true) => Some(Label::Zero),
        (true, true) => Some(Label::from_bool(weight1 > weight0)),
        (false, false) => None,
    }
}

/// Ratio of active class scores, with 0/0 taken as 0.
pub(crate) fn score_ratio(active1: f64, active0: f64) -> f64 {
    let total = active1 + active0;
    if total > 0.0 {
        active1 / total
    } else {
        0.0
    }
}

pub(crate) fn check_prior(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("class prior must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// True class regions, prior `p = P{Y = 1}` and their cached volumes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BayesOracleComplete {
    pub c1: ConvexBody,
    pub c0: ConvexBody,
    pub p: f64,
    pub mu1: f64,
    pub mu0: f64,
}

impl BayesOracleComplete {
    pub fn new(c1: ConvexBody, c0: ConvexBody, p: f64) -> Result<Self> {
        check_dim(c1.dim(), c0.dim())?;
        check_prior(p)?;
        let mu1 = c1.volume_exact().value;
        let mu0 = c0.volume_exact().value;
        if !(mu1 > 0.0 && mu0 > 0.0) {
            return Err(Error::input("class regions must have positive volume"));
        }
        Ok(BayesOracleComplete { c1, c0, p, mu1, mu0 })
    }

    pub fn dim(&self) -> usize {
        self.c1.dim()
    }

    fn weights(&self) -> (f64, f64) {
        (self.p / self.mu1, (1.0 - self.p) / self.mu0)
    }
}

/// Bayes rule: class 1 on `C1 - C0`, class 0 on `C0 - C1`, and on the overlap
/// class 1 iff `p/mu(C1) > (1-p)/mu(C0)`.
///
/// Outside both regions the density is zero and the rule is not determined;
/// this returns class 0 there. Draws from the class mixture never land there.
pub fn bayes_complete(oracle: &BayesOracleComplete, x: &[f64]) -> Result<Label> {
    check_dim(oracle.dim(), x.len())?;
    let in1 = oracle.c1.contains(x, 0.0)?;
    let in0 = oracle.c0.contains(x, 0.0)?;
    let (w1, w0) = oracle.weights();
    Ok(region_rule(in1, in0, w1, w0).unwrap_or(Label::Zero))
}

/// `P{Y = 1 | X = x}` under the true model (0 outside both regions).
pub fn bayes_posterior(oracle: &BayesOracleComplete, x: &[f64]) -> Result<f64> {
    check_dim(oracle.dim(), x.len())?;
    let (w1, w0) = oracle.weights();
    let a1 = if oracle.c1.contains(x, 0.0)? { w1 } else { 0.0 };
    let a0 = if oracle.c0.contains(x, 0.0)? { w0 } else { 0.0 };
    Ok(score_ratio(a1, a0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub fallback_radius: f64,
    /// Seed for Monte Carlo hull volumes (only used above three dimensions).
    pub seed: u64,
    pub mc_volume_samples: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            fallback_radius: DEFAULT_FALLBACK_RADIUS,
            seed: 0,
            mc_volume_samples: FIT_VOLUME_MC_SAMPLES,
        }
    }
}

/// Plug-in classifier fitted from complete data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompleteModel {
    pub hull1: HullEstimate,
    pub hull0: HullEstimate,
    pub p_hat: f64,
    pub n: usize,
    pub vol1: VolumeEstimate,
    pub vol0: VolumeEstimate,
    pub options: FitOptions,
}

pub(crate) fn hull_volume(hull: &HullEstimate, opts: &FitOptions, salt: u64) -> Result<VolumeEstimate> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(salt);
    volume(hull, opts.mc_volume_samples, &mut rng)
}

/// Splits by label, builds both class hulls and the empirical prior.
pub fn fit_complete(data: &[LabeledSample], opts: FitOptions) -> Result<CompleteModel> {
    let first = data
        .first()
        .ok_or_else(|| Error::input("cannot fit on an empty dataset"))?;
    let dim = first.x.dim();
    let (mut ones, mut zeros) = (Vec::new(), Vec::new());
    for s in data {
        check_dim(dim, s.x.dim())?;
        match s.y {
            Label::One => ones.push(s.x.clone()),
            Label::Zero => zeros.push(s.x.clone()),
        }
    }
    let hull1 = build_hull(&ones, dim, opts.fallback_radius)?;
    let hull0 = build_hull(&zeros, dim, opts.fallback_radius)?;
    let vol1 = hull_volume(&hull1, &opts, 1)?;
    let vol0 = hull_volume(&hull0, &opts, 0)?;
    Ok(CompleteModel {
        p_hat: ones.len() as f64 / data.len() as f64,
        n: data.len(),
        hull1,
        hull0,
        vol1,
        vol0,
        options: opts,
    })
}

impl CompleteModel {
    pub fn dim(&self) -> usize {
        self.hull1.dim
    }

    /// Membership used by the rule: zero-volume hulls never contain a point.
    fn memberships(&self, x: &[f64]) -> Result<(bool, bool)> {
        let in1 = !self.hull1.is_degenerate() && contains(&self.hull1, x, DEFAULT_MEMBERSHIP_TOL)?;
        let in0 = !self.hull0.is_degenerate() && contains(&self.hull0, x, DEFAULT_MEMBERSHIP_TOL)?;
        Ok((in1, in0))
    }

    fn weights(&self) -> (f64, f64) {
        (self.p_hat / self.vol1.value, (1.0 - self.p_hat) / self.vol0.value)
    }
}

/// Plug-in rule: the four-region Bayes rule with hulls, hull volumes and the
/// empirical prior in place of the truth, and outside both hulls class 1 iff
/// `p_hat * dist(x, hull1) < (1 - p_hat) * dist(x, hull0)`.
pub fn predict_complete(model: &CompleteModel, x: &[f64]) -> Result<Label> {
    check_dim(model.dim(), x.len())?;
    let (in1, in0) = model.memberships(x)?;
    let (w1, w0) = model.weights();
    match region_rule(in1, in0, w1, w0) {
        Some(label) => Ok(label),
        None => weighted_distance_rule(&model.hull1, &model.hull0, model.p_hat, x),
    }
}

pub(crate) fn weighted_distance_rule(
    hull1: &HullEstimate,
    hull0: &HullEstimate,
    p_hat: f64,
    x: &[f64],
) -> Result<Label> {
    let d1 = distance_to_hull(hull1, x)?;
    let d0 = distance_to_hull(hull0, x)?;
    Ok(Label::from_bool(p_hat * d1 < (1.0 - p_hat) * d0))
}

/// Sample-based posterior: the Bayes posterior with hulls and `p_hat`.
pub fn plugin_posterior(model: &CompleteModel, x: &[f64]) -> Result<f64> {
    check_dim(model.dim(), x.len())?;
    let (in1, in0) = model.memberships(x)?;
    let (w1, w0) = model.weights();
    Ok(score_ratio(
        if in1 { w1 } else { 0.0 },
        if in0 { w0 } else { 0.0 },
    ))
}
