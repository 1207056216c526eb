use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::Label;
use crate::error::{Error, Result};
use crate::geometry::{check_dim, Point};

use super::{Layout, MissingSample};

/// Default bound keeping observation probabilities inside `[floor, 1 - floor]`.
pub const DEFAULT_PROPENSITY_FLOOR: f64 = 0.01;

/// Probability that the optional block is observed, as a function of the
/// always-observed covariates only (missing at random).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Propensity {
    Constant {
        value: f64,
    },
    /// `lower + (upper - lower) * sigmoid(<weights, x> + bias)`.
    Logistic {
        weights: Vec<f64>,
        bias: f64,
        lower: f64,
        upper: f64,
    },
}

impl Propensity {
    pub fn constant(value: f64) -> Self {
        Propensity::Constant { value }
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        match self {
            Propensity::Constant { value } => Ok(*value),
            Propensity::Logistic {
                weights,
                bias,
                lower,
                upper,
            } => {
                check_dim(weights.len(), x.len())?;
                let t: f64 = weights.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() + bias;
                Ok(lower + (upper - lower) / (1.0 + (-t).exp()))
            }
        }
    }

    /// Closed interval containing every value the function can take.
    pub fn range(&self) -> (f64, f64) {
        match self {
            Propensity::Constant { value } => (*value, *value),
            Propensity::Logistic { lower, upper, .. } => (lower.min(*upper), lower.max(*upper)),
        }
    }

    fn check_unit_interval(&self) -> Result<()> {
        let (lo, hi) = self.range();
        if !(lo >= 0.0 && hi <= 1.0) {
            return Err(Error::input(format!(
                "observation probability range [{lo}, {hi}] leaves [0, 1]"
            )));
        }
        Ok(())
    }
}

/// Observation probabilities `q(x, 1)` and `q(x, 0)` per class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MissingnessMechanism {
    pub q1: Propensity,
    pub q0: Propensity,
}

impl MissingnessMechanism {
    pub fn constant(q1: f64, q0: f64) -> Self {
        MissingnessMechanism {
            q1: Propensity::constant(q1),
            q0: Propensity::constant(q0),
        }
    }

    /// `P{delta = 1 | X = x, Y = y}`. Depends on `x` only, so it also equals the
    /// probability given the full covariate vector.
    pub fn q(&self, x: &[f64], y: Label) -> Result<f64> {
        match y {
            Label::One => self.q1.eval(x),
            Label::Zero => self.q0.eval(x),
        }
    }

    /// Checks that both functions stay within `[floor, 1 - floor]`, so the
    /// observation probability is bounded away from 0 and from 1.
    pub fn check_bounds(&self, floor: f64) -> Result<()> {
        for (name, q) in [("q1", &self.q1), ("q0", &self.q0)] {
            let (lo, hi) = q.range();
            if lo < floor || hi > 1.0 - floor {
                return Err(Error::input(format!(
                    "{name} range [{lo}, {hi}] must lie within [{floor}, {}]",
                    1.0 - floor
                )));
            }
        }
        Ok(())
    }
}

/// Draws the missingness indicator for each complete observation `(z, y)` and
/// drops the optional block where it comes out 0.
pub fn gen_missing<R: Rng + ?Sized>(
    complete: &[(Point, Label)],
    mech: &MissingnessMechanism,
    layout: Layout,
    rng: &mut R,
) -> Result<Vec<MissingSample>> {
    mech.q1.check_unit_interval()?;
    mech.q0.check_unit_interval()?;
    complete
        .iter()
        .map(|(z, y)| {
            check_dim(layout.total(), z.dim())?;
            let (x, v) = z.split_at(layout.d)?;
            let q = mech.q(&x, *y)?;
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::input(format!("observation probability {q} outside [0, 1]")));
            }
            let observed = rng.random::<f64>() < q;
            Ok(MissingSample {
                x,
                v: observed.then_some(v),
                y: *y,
            })
        })
        .collect()
}
