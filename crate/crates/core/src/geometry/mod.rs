//! Vertex-represented convex hulls and the estimators built on them.
//!
//! Hulls are stored by their extreme points only. Membership and distance are
//! answered by a minimum-norm-point program over convex-combination weights, so
//! nothing here needs facets and every routine works in any ambient dimension.
//! Exact volume is available up to three dimensions; above that it is a Monte
//! Carlo estimate.

mod discrepancy;
mod hull;
pub(crate) mod linalg;
mod mnp;
pub(crate) mod volume;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use discrepancy::{hausdorff_estimate, symdiff_measure};
pub use hull::build_hull;
pub use mnp::{min_norm_point, MinNormPoint, MNP_GAP_TOL, MNP_MAX_ITER};
pub use volume::{ball_volume, volume, VolumeEstimate};

/// Absolute Euclidean tolerance used for membership decisions unless the caller overrides it.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

/// Radius of the ball that stands in for a hull built from zero samples.
pub const DEFAULT_FALLBACK_RADIUS: f64 = 1.0;

/// A point in covariate space. Coordinates are finite and there is at least one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::input("point must have at least one coordinate"));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::input(format!("non-finite coordinate {c}")));
        }
        Ok(Point(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }

    /// Splits into the first `d` coordinates and the rest.
    pub fn split_at(&self, d: usize) -> Result<(Point, Point)> {
        if d == 0 || d >= self.dim() {
            return Err(Error::input(format!(
                "cannot split a {}-dimensional point at {d}",
                self.dim()
            )));
        }
        let (a, b) = self.0.split_at(d);
        Ok((Point(a.to_vec()), Point(b.to_vec())))
    }

    /// The first `d` coordinates.
    pub fn truncate(&self, d: usize) -> Result<Point> {
        if d == 0 || d > self.dim() {
            return Err(Error::input(format!(
                "cannot truncate a {}-dimensional point to {d}",
                self.dim()
            )));
        }
        Ok(Point(self.0[..d].to_vec()))
    }

    pub fn concat(&self, other: &Point) -> Point {
        let mut c = self.0.clone();
        c.extend_from_slice(&other.0);
        Point(c)
    }
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

/// Builds a point from a literal slice; panics on empty or non-finite input.
#[macro_export]
macro_rules! pt {
    ($($c:expr),+ $(,)?) => {
        $crate::geometry::Point::new(vec![$($c as f64),+]).expect("valid point literal")
    };
}

/// Convex hull of a finite point set, kept as its extreme points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    affine_dim: usize,
}

impl VPolytope {
    /// Wraps a vertex list that is already known to be the extreme-point set.
    /// Use [`build_hull`] for arbitrary inputs.
    pub(crate) fn from_extreme_points(dim: usize, vertices: Vec<Point>) -> Self {
        let affine_dim = linalg::affine_rank(&vertices);
        VPolytope {
            dim,
            vertices,
            affine_dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    /// True when the vertices do not span the ambient space (Lebesgue measure zero).
    pub fn is_degenerate(&self) -> bool {
        self.affine_dim < self.dim
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v.iter()) {
                *ci += vi;
            }
        }
        let n = self.vertices.len() as f64;
        c.iter_mut().for_each(|ci| *ci /= n);
        c
    }

    /// Per-axis minimum and maximum over the vertices.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for v in &self.vertices {
            for k in 0..self.dim {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Euclidean distance from `x` to the polytope.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        Ok(min_norm_point(&self.vertices, x)?.distance)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }

    /// Re-checks the serialized invariants after deserialization.
    pub(crate) fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::input("polytope has no vertices"));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.dim() != self.dim) {
            return Err(Error::input(format!(
                "vertex of dimension {} in a {}-dimensional polytope",
                v.dim(),
                self.dim
            )));
        }
        let rank = linalg::affine_rank(&self.vertices);
        if rank != self.affine_dim {
            return Err(Error::input(format!(
                "affine_dim {} does not match vertex span {rank}",
                self.affine_dim
            )));
        }
        Ok(())
    }
}

/// Sample-based estimate of a convex region: the hull of the sample, or the
/// fallback ball about the origin when the sample is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullEstimate {
    pub dim: usize,
    pub sample_count: usize,
    pub shape: HullShape,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HullShape {
    Hull(VPolytope),
    FallbackBall { radius: f64 },
}

impl HullEstimate {
    pub fn polytope(&self) -> Option<&VPolytope> {
        match &self.shape {
            HullShape::Hull(p) => Some(p),
            HullShape::FallbackBall { .. } => None,
        }
    }

    pub fn is_fallback(&self) -> bool {
        matches!(self.shape, HullShape::FallbackBall { .. })
    }

    /// Zero-volume hull. The fallback ball is never degenerate.
    pub fn is_degenerate(&self) -> bool {
        self.polytope().is_some_and(VPolytope::is_degenerate)
    }

    pub fn vertex_count(&self) -> usize {
        self.polytope().map_or(0, |p| p.vertices().len())
    }

    pub fn affine_dim(&self) -> usize {
        self.polytope().map_or(self.dim, VPolytope::affine_dim)
    }

    /// Re-checks the invariants of a deserialized estimate.
    pub(crate) fn validate(&self) -> Result<()> {
        match &self.shape {
            HullShape::Hull(p) => {
                p.validate()?;
                if p.dim() != self.dim || self.sample_count == 0 {
                    return Err(Error::input("hull dimension or sample count is inconsistent"));
                }
            }
            HullShape::FallbackBall { radius } => {
                if self.sample_count != 0 || !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Error::input("fallback ball needs zero samples and a positive radius"));
                }
            }
        }
        Ok(())
    }
}

/// Whether `x` lies within Euclidean distance `tol` of the hull.
pub fn contains(hull: &HullEstimate, x: &[f64], tol: f64) -> Result<bool> {
    Ok(distance_to_hull(hull, x)? <= tol)
}

/// Euclidean distance from `x` to the hull (zero inside).
pub fn distance_to_hull(hull: &HullEstimate, x: &[f64]) -> Result<f64> {
    check_dim(hull.dim, x.len())?;
    match &hull.shape {
        HullShape::Hull(p) => p.distance(x),
        HullShape::FallbackBall { radius } => Ok((linalg::norm(x) - radius).max(0.0)),
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::input(format!(
            "dimension mismatch: expected {expected}, got {got}"
        )));
    }
    Ok(())
}
