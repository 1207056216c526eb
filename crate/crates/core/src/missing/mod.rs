//! Classification when a block of covariates may be unobserved.
//!
//! Covariates split as `z = (x, v)` with `x` in `R^d` always observed and `v`
//! in `R^s` observed only when `delta = 1`. Observation probabilities depend on
//! `x` and the class only (missing at random), so the probability given `z`
//! equals the probability given `x` and one kernel-regression estimate per
//! class serves both branches of the rule.

mod kernel;
mod mechanism;

use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::classify::{
    check_prior, hull_volume, region_rule, score_ratio, weighted_distance_rule, FitOptions, Label,
};
use crate::error::{Error, Result};
use crate::geometry::{
    build_hull, check_dim, contains, HullEstimate, Point, VolumeEstimate, DEFAULT_MEMBERSHIP_TOL,
};

pub use kernel::{Bandwidth, KernelKind, KernelSpec};
pub use mechanism::{gen_missing, MissingnessMechanism, Propensity, DEFAULT_PROPENSITY_FLOOR};

/// Sizes of the always-observed block (`d`) and the optional block (`s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub d: usize,
    pub s: usize,
}

impl Layout {
    pub fn new(d: usize, s: usize) -> Result<Self> {
        if d == 0 || s == 0 {
            return Err(Error::input(format!("need d >= 1 and s >= 1, got d={d}, s={s}")));
        }
        Ok(Layout { d, s })
    }

    pub fn total(self) -> usize {
        self.d + self.s
    }
}

/// One observation; `v` is present exactly when `delta = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MissingSample {
    pub x: Point,
    pub v: Option<Point>,
    pub y: Label,
}

impl MissingSample {
    pub fn delta(&self) -> u8 {
        u8::from(self.v.is_some())
    }

    /// Full covariate vector when observed.
    pub fn z(&self) -> Option<Point> {
        self.v.as_ref().map(|v| self.x.concat(v))
    }
}

/// Per-class `(x, delta)` pairs sorted by the first coordinate, so a kernel
/// window only scans a slab of the training set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSupport {
    pub xs: Vec<Point>,
    pub deltas: Vec<u8>,
}

impl KernelSupport {
    fn new(mut pairs: Vec<(Point, u8)>) -> Self {
        pairs.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
        let (xs, deltas) = pairs.into_iter().unzip();
        KernelSupport { xs, deltas }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `sum delta_j K((X_j - x)/h) / sum K((X_j - x)/h)`, with 0/0 taken as 0.
    fn estimate(&self, kind: KernelKind, h: f64, x: &[f64]) -> f64 {
        let reach = kind.support_radius() * h;
        let start = self.xs.partition_point(|p| p[0] < x[0] - reach);
        let inv_h2 = 1.0 / (h * h);
        let (mut num, mut den) = (0.0, 0.0);
        for (p, &delta) in self.xs[start..].iter().zip(&self.deltas[start..]) {
            if p[0] > x[0] + reach {
                break;
            }
            let u2: f64 = p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() * inv_h2;
            let k = kind.eval_sq(u2);
            den += k;
            num += k * f64::from(delta);
        }
        score_ratio(num, den - num)
    }
}

/// Plug-in classifier for partially observed data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MissingModel {
    pub layout: Layout,
    /// Hulls in `R^(d+s)` of the complete cases of each class.
    pub hull1_z: HullEstimate,
    pub hull0_z: HullEstimate,
    /// Hulls in `R^d` of the incomplete cases of each class.
    pub hull1_x: HullEstimate,
    pub hull0_x: HullEstimate,
    pub vol1_z: VolumeEstimate,
    pub vol0_z: VolumeEstimate,
    pub vol1_x: VolumeEstimate,
    pub vol0_x: VolumeEstimate,
    pub p_hat: f64,
    pub n: usize,
    pub kernel: KernelSpec,
    /// Bandwidth resolved at the training size.
    pub bandwidth: f64,
    pub support1: KernelSupport,
    pub support0: KernelSupport,
    pub options: FitOptions,
}

pub fn fit_missing(
    data: &[MissingSample],
    layout: Layout,
    kernel: KernelSpec,
    opts: FitOptions,
) -> Result<MissingModel> {
    let layout = Layout::new(layout.d, layout.s)?;
    if data.is_empty() {
        return Err(Error::input("cannot fit on an empty dataset"));
    }
    let mut z_cases = [Vec::new(), Vec::new()];
    let mut x_cases = [Vec::new(), Vec::new()];
    let mut pairs = [Vec::new(), Vec::new()];
    for s in data {
        check_dim(layout.d, s.x.dim())?;
        let k = usize::from(s.y.as_u8());
        match &s.v {
            Some(v) => {
                check_dim(layout.s, v.dim())?;
                z_cases[k].push(s.x.concat(v));
            }
            None => x_cases[k].push(s.x.clone()),
        }
        pairs[k].push((s.x.clone(), s.delta()));
    }
    let r = opts.fallback_radius;
    let hull1_z = build_hull(&z_cases[1], layout.total(), r)?;
    let hull0_z = build_hull(&z_cases[0], layout.total(), r)?;
    let hull1_x = build_hull(&x_cases[1], layout.d, r)?;
    let hull0_x = build_hull(&x_cases[0], layout.d, r)?;
    let ones = pairs[1].len();
    let [pairs0, pairs1] = pairs;
    Ok(MissingModel {
        layout,
        vol1_z: hull_volume(&hull1_z, &opts, 11)?,
        vol0_z: hull_volume(&hull0_z, &opts, 10)?,
        vol1_x: hull_volume(&hull1_x, &opts, 21)?,
        vol0_x: hull_volume(&hull0_x, &opts, 20)?,
        hull1_z,
        hull0_z,
        hull1_x,
        hull0_x,
        p_hat: ones as f64 / data.len() as f64,
        n: data.len(),
        bandwidth: kernel.bandwidth.resolve(data.len(), layout.d)?,
        kernel,
        support1: KernelSupport::new(pairs1),
        support0: KernelSupport::new(pairs0),
        options: opts,
    })
}

/// Kernel-regression estimate of `P{delta = 1 | X = x, Y = y}`.
pub fn kernel_q_hat(model: &MissingModel, x: &[f64], y: Label) -> Result<f64> {
    check_dim(model.layout.d, x.len())?;
    let support = match y {
        Label::One => &model.support1,
        Label::Zero => &model.support0,
    };
    Ok(support.estimate(model.kernel.kind, model.bandwidth, x))
}

fn non_degenerate_contains(hull: &HullEstimate, x: &[f64]) -> Result<bool> {
    Ok(!hull.is_degenerate() && contains(hull, x, DEFAULT_MEMBERSHIP_TOL)?)
}

/// Plug-in rule. With `v` present the decision is made in `R^(d+s)` on the
/// complete-case hulls, comparing `q1_hat(x) p_hat / vol(hull1)` against
/// `q0_hat(x) (1 - p_hat) / vol(hull0)` on their overlap. Without `v` it is made
/// in `R^d` on the incomplete-case hulls with `1 - q_hat` in place of `q_hat`.
/// Outside both hulls the weighted-distance rule applies in either branch.
pub fn predict_missing(model: &MissingModel, x: &[f64], v: Option<&[f64]>) -> Result<Label> {
    check_dim(model.layout.d, x.len())?;
    let p = model.p_hat;
    let (hull1, hull0, vol1, vol0, point) = match v {
        Some(v) => {
            check_dim(model.layout.s, v.len())?;
            let mut z = x.to_vec();
            z.extend_from_slice(v);
            (&model.hull1_z, &model.hull0_z, model.vol1_z, model.vol0_z, z)
        }
        None => (&model.hull1_x, &model.hull0_x, model.vol1_x, model.vol0_x, x.to_vec()),
    };
    let in1 = non_degenerate_contains(hull1, &point)?;
    let in0 = non_degenerate_contains(hull0, &point)?;
    if !(in1 || in0) {
        return weighted_distance_rule(hull1, hull0, p, &point);
    }
    let (w1, w0) = if in1 && in0 {
        let q1 = kernel_q_hat(model, x, Label::One)?;
        let q0 = kernel_q_hat(model, x, Label::Zero)?;
        let (f1, f0) = if v.is_some() { (q1, q0) } else { (1.0 - q1, 1.0 - q0) };
        (f1 * p / vol1.value, f0 * (1.0 - p) / vol0.value)
    } else {
        (0.0, 0.0)
    };
    Ok(region_rule(in1, in0, w1, w0).expect("inside at least one hull"))
}

/// True model for partially observed data: regions in `R^(d+s)`, their
/// projections on the first `d` coordinates, the prior and the mechanism.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BayesOracleMissing {
    pub layout: Layout,
    pub c1: ConvexBody,
    pub c0: ConvexBody,
    pub c1_proj: ConvexBody,
    pub c0_proj: ConvexBody,
    pub p: f64,
    pub mech: MissingnessMechanism,
    pub mu1: f64,
    pub mu0: f64,
    pub mu1_proj: f64,
    pub mu0_proj: f64,
}

impl BayesOracleMissing {
    pub fn new(
        c1: ConvexBody,
        c0: ConvexBody,
        p: f64,
        mech: MissingnessMechanism,
        layout: Layout,
    ) -> Result<Self> {
        let layout = Layout::new(layout.d, layout.s)?;
        check_dim(layout.total(), c1.dim())?;
        check_dim(layout.total(), c0.dim())?;
        check_prior(p)?;
        let c1_proj = c1.project(layout.d)?;
        let c0_proj = c0.project(layout.d)?;
        Ok(BayesOracleMissing {
            mu1: c1.volume_exact().value,
            mu0: c0.volume_exact().value,
            mu1_proj: c1_proj.volume_exact().value,
            mu0_proj: c0_proj.volume_exact().value,
            layout,
            c1,
            c0,
            c1_proj,
            c0_proj,
            p,
            mech,
        })
    }
}

/// Memberships and class scores of the true model at `(x, v)`; with `v`
/// missing the projections and `1 - q` are used.
fn oracle_scores(
    oracle: &BayesOracleMissing,
    x: &[f64],
    v: Option<&[f64]>,
) -> Result<(bool, bool, f64, f64)> {
    check_dim(oracle.layout.d, x.len())?;
    let p = oracle.p;
    let (q1, q0) = (oracle.mech.q(x, Label::One)?, oracle.mech.q(x, Label::Zero)?);
    match v {
        Some(v) => {
            check_dim(oracle.layout.s, v.len())?;
            let mut z = x.to_vec();
            z.extend_from_slice(v);
            Ok((
                oracle.c1.contains(&z, 0.0)?,
                oracle.c0.contains(&z, 0.0)?,
                q1 * p / oracle.mu1,
                q0 * (1.0 - p) / oracle.mu0,
            ))
        }
        None => Ok((
            oracle.c1_proj.contains(x, 0.0)?,
            oracle.c0_proj.contains(x, 0.0)?,
            (1.0 - q1) * p / oracle.mu1_proj,
            (1.0 - q0) * (1.0 - p) / oracle.mu0_proj,
        )),
    }
}

/// Bayes rule with missing covariates. Observed `v`: class 1 on `C1 - C0`, and on
/// the overlap iff `q(x,1) p / mu(C1) > q(x,0) (1-p) / mu(C0)`. Missing `v`: the
/// same on the projections with `1 - q(x, i)`. Class 0 everywhere else,
/// including outside both regions where the rule is not determined.
pub fn bayes_missing(oracle: &BayesOracleMissing, x: &[f64], v: Option<&[f64]>) -> Result<Label> {
    let (in1, in0, w1, w0) = oracle_scores(oracle, x, v)?;
    Ok(region_rule(in1, in0, w1, w0).unwrap_or(Label::Zero))
}

/// `P{Y = 1 | X = x, V = v, delta = 1}` or, with `v` missing,
/// `P{Y = 1 | X = x, delta = 0}` under the true model (0 outside both regions).
pub fn bayes_missing_posterior(oracle: &BayesOracleMissing, x: &[f64], v: Option<&[f64]>) -> Result<f64> {
    let (in1, in0, w1, w0) = oracle_scores(oracle, x, v)?;
    Ok(score_ratio(if in1 { w1 } else { 0.0 }, if in0 { w0 } else { 0.0 }))
}
