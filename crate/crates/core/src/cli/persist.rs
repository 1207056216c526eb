//! JSON documents for fitted models and hulls.
//!
//! Every document carries a `schema` field naming its format and version.
//! Floats are written in the shortest decimal form that parses back to the
//! same `f64`, so a save/load cycle is bit-exact.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::CompleteModel;
use crate::error::{Error, Result};
use crate::geometry::HullEstimate;
use crate::missing::MissingModel;

pub const COMPLETE_MODEL_SCHEMA: &str = "convexclass.complete-model/1";
pub const MISSING_MODEL_SCHEMA: &str = "convexclass.missing-model/1";
pub const HULL_DOC_SCHEMA: &str = "convexclass.hull/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "schema")]
pub enum ModelFile {
    #[serde(rename = "convexclass.complete-model/1")]
    Complete(CompleteModel),
    #[serde(rename = "convexclass.missing-model/1")]
    Missing(MissingModel),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "schema")]
pub enum HullFile {
    #[serde(rename = "convexclass.hull/1")]
    Hull(HullEstimate),
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

fn check_hull(name: &str, hull: &HullEstimate, dim: usize) -> Result<()> {
    hull.validate().map_err(|e| Error::input(format!("{name}: {e}")))?;
    if hull.dim != dim {
        return Err(Error::input(format!("{name} has dimension {}, expected {dim}", hull.dim)));
    }
    Ok(())
}

impl ModelFile {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelFile::Complete(m) => {
                check_prob("p_hat", m.p_hat)?;
                check_hull("hull1", &m.hull1, m.hull1.dim)?;
                check_hull("hull0", &m.hull0, m.hull1.dim)?;
            }
            ModelFile::Missing(m) => {
                check_prob("p_hat", m.p_hat)?;
                let (d, total) = (m.layout.d, m.layout.total());
                check_hull("hull1_z", &m.hull1_z, total)?;
                check_hull("hull0_z", &m.hull0_z, total)?;
                check_hull("hull1_x", &m.hull1_x, d)?;
                check_hull("hull0_x", &m.hull0_x, d)?;
                if !(m.bandwidth > 0.0 && m.bandwidth.is_finite()) {
                    return Err(Error::input("bandwidth must be positive"));
                }
                for s in [&m.support1, &m.support0] {
                    let sorted = s.xs.windows(2).all(|w| w[0][0] <= w[1][0]);
                    if s.xs.len() != s.deltas.len()
                        || !sorted
                        || s.xs.iter().any(|x| x.dim() != d)
                        || s.deltas.iter().any(|&v| v > 1)
                    {
                        return Err(Error::input("kernel support arrays are inconsistent"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: ModelFile = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

pub fn hull_to_json(hull: &HullEstimate) -> Result<String> {
    Ok(serde_json::to_string_pretty(&HullFile::Hull(hull.clone()))?)
}

pub fn hull_from_json(text: &str) -> Result<HullEstimate> {
    let HullFile::Hull(h) = serde_json::from_str(text)?;
    h.validate()?;
    Ok(h)
}
