//! Ground-truth convex bodies used as class regions in simulations, with exact
//! volumes, uniform samplers, and coordinate projections.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg::{affine_rank, det, factorial, norm};
use crate::geometry::{
    ball_volume, build_hull, check_dim, HullShape, Point, VPolytope, VolumeEstimate,
    DEFAULT_FALLBACK_RADIUS,
};

/// Draws tried before rejection sampling gives up on a body.
pub const REJECTION_RETRY_CAP: usize = 1_000_000;

/// Samples used for the Monte Carlo volume of a polytope body above three dimensions.
pub const POLYTOPE_VOLUME_MC_SAMPLES: usize = 100_000;

/// Closed axis-aligned box `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBox", into = "RawBox")]
pub struct AxisBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawBox> for AxisBox {
    type Error = Error;
    fn try_from(r: RawBox) -> Result<Self> {
        AxisBox::new(r.lower, r.upper)
    }
}

impl From<AxisBox> for RawBox {
    fn from(b: AxisBox) -> Self {
        RawBox {
            lower: b.lower,
            upper: b.upper,
        }
    }
}

impl AxisBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::input(format!(
                "box bounds must be nonempty and of equal length, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (k, (a, b)) in lower.iter().zip(&upper).enumerate() {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::input(format!(
                    "box axis {k} needs finite lower < upper, got [{a}, {b}]"
                )));
            }
        }
        Ok(AxisBox { lower, upper })
    }

    pub fn unit(dim: usize) -> Self {
        AxisBox {
            lower: vec![0.0; dim],
            upper: vec![1.0; dim],
        }
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (a, b))| *x >= a - tol && *x <= b + tol)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let c = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| rng.random_range(*a..*b))
            .collect();
        Point::new(c).expect("finite box sample")
    }

    /// Smallest box containing both.
    pub fn union(&self, other: &AxisBox) -> AxisBox {
        AxisBox {
            lower: self.lower.iter().zip(&other.lower).map(|(a, b)| a.min(*b)).collect(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a.max(*b)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

/// A `dim`-simplex given by `dim + 1` affinely independent vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Point::dim);
        if dim == 0 || vertices.len() != dim + 1 {
            return Err(Error::input(format!(
                "a simplex in dimension {dim} needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        for v in &vertices {
            check_dim(dim, v.dim())?;
        }
        if affine_rank(&vertices) != dim {
            return Err(Error::input("simplex vertices are affinely dependent"));
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    fn edge_rows(&self) -> Vec<Vec<f64>> {
        let v0 = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0.iter()).map(|(a, b)| a - b).collect())
            .collect()
    }

    pub fn volume(&self) -> f64 {
        det(&self.edge_rows()).abs() / factorial(self.dim())
    }

    /// Barycentric coordinates of `x` (first entry is the weight of vertex 0).
    pub fn barycentric(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let rows = self.edge_rows();
        let a = nalgebra::DMatrix::from_fn(d, d, |r, c| rows[c][r]);
        let b = nalgebra::DVector::from_fn(d, |r, _| x[r] - self.vertices[0][r]);
        let lam = a.lu().solve(&b).expect("nondegenerate simplex");
        let mut out = Vec::with_capacity(d + 1);
        out.push(1.0 - lam.sum());
        out.extend(lam.iter().copied());
        out
    }
}

/// A closed convex body of finite positive volume.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConvexBody {
    Box(AxisBox),
    Ball(Ball),
    Simplex(Simplex),
    Polytope(VPolytope),
}

impl ConvexBody {
    pub fn unit_box(dim: usize) -> Self {
        ConvexBody::Box(AxisBox::unit(dim))
    }

    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        Ok(ConvexBody::Box(AxisBox::new(lower, upper)?))
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::input(format!("ball radius must be positive, got {radius}")));
        }
        Ok(ConvexBody::Ball(Ball { center, radius }))
    }

    pub fn simplex(vertices: Vec<Point>) -> Result<Self> {
        Ok(ConvexBody::Simplex(Simplex::new(vertices)?))
    }

    /// Hull of the given points as a body; it must be full-dimensional.
    pub fn polytope(points: &[Point]) -> Result<Self> {
        let dim = points
            .first()
            .map(Point::dim)
            .ok_or_else(|| Error::input("polytope body needs at least one vertex"))?;
        let hull = build_hull(points, dim, DEFAULT_FALLBACK_RADIUS)?;
        match hull.shape {
            HullShape::Hull(p) if !p.is_degenerate() => Ok(ConvexBody::Polytope(p)),
            _ => Err(Error::input(
                "polytope body must be full-dimensional (positive volume)",
            )),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Box(b) => b.dim(),
            ConvexBody::Ball(b) => b.center.dim(),
            ConvexBody::Simplex(s) => s.dim(),
            ConvexBody::Polytope(p) => p.dim(),
        }
    }

    /// Re-validates invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexBody::Box(_) => Ok(()),
            ConvexBody::Ball(b) => ConvexBody::ball(b.center.clone(), b.radius).map(|_| ()),
            ConvexBody::Simplex(s) => Simplex::new(s.vertices.clone()).map(|_| ()),
            ConvexBody::Polytope(p) => {
                p.validate()?;
                if p.is_degenerate() {
                    return Err(Error::Input(
                        "polytope body must be full-dimensional (positive volume)".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Closed-form membership. For a simplex `tol` applies to barycentric
    /// coordinates; otherwise it is a Euclidean slack.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        Ok(match self {
            ConvexBody::Box(b) => b.contains(x, tol),
            ConvexBody::Ball(b) => {
                let d: Vec<f64> = x.iter().zip(b.center.iter()).map(|(a, c)| a - c).collect();
                norm(&d) <= b.radius + tol
            }
            ConvexBody::Simplex(s) => s.barycentric(x).iter().all(|&l| l >= -tol),
            ConvexBody::Polytope(p) => p.contains(x, tol)?,
        })
    }

    /// Tightest axis-aligned box containing the body.
    pub fn bounding_box(&self) -> AxisBox {
        match self {
            ConvexBody::Box(b) => b.clone(),
            ConvexBody::Ball(b) => AxisBox {
                lower: b.center.iter().map(|c| c - b.radius).collect(),
                upper: b.center.iter().map(|c| c + b.radius).collect(),
            },
            ConvexBody::Simplex(s) => vertex_bounds(s.vertices()),
            ConvexBody::Polytope(p) => vertex_bounds(p.vertices()),
        }
    }

    /// Exact volume, except for polytope bodies above three dimensions where the
    /// value is a fixed-seed Monte Carlo estimate flagged `exact: false`.
    pub fn volume_exact(&self) -> VolumeEstimate {
        match self {
            ConvexBody::Box(b) => VolumeEstimate::exact(b.volume()),
            ConvexBody::Ball(b) => VolumeEstimate::exact(ball_volume(b.center.dim(), b.radius)),
            ConvexBody::Simplex(s) => VolumeEstimate::exact(s.volume()),
            ConvexBody::Polytope(p) => {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                crate::geometry::volume::polytope_volume(p, POLYTOPE_VOLUME_MC_SAMPLES, &mut rng)
                    .expect("nonzero sample count")
            }
        }
    }

    /// One draw from the uniform distribution on the body.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point> {
        match self {
            ConvexBody::Box(b) => Ok(b.sample(rng)),
            ConvexBody::Ball(b) => {
                let d = b.center.dim();
                let dir: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                let len = norm(&dir);
                let r = b.radius * rng.random::<f64>().powf(1.0 / d as f64);
                let c = dir
                    .iter()
                    .zip(b.center.iter())
                    .map(|(u, c)| c + r * u / len)
                    .collect();
                Point::new(c)
            }
            ConvexBody::Simplex(_) | ConvexBody::Polytope(_) => {
                let bbox = self.bounding_box();
                for _ in 0..REJECTION_RETRY_CAP {
                    let x = bbox.sample(rng);
                    if self.contains(&x, 0.0)? {
                        return Ok(x);
                    }
                }
                Err(Error::numerical(
                    format!("rejection sampler exceeded {REJECTION_RETRY_CAP} retries"),
                    None,
                ))
            }
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<Point>> {
        (0..n).map(|_| self.sample_uniform(rng)).collect()
    }

    /// Orthogonal projection onto the first `d` coordinates.
    pub fn project(&self, d: usize) -> Result<ConvexBody> {
        if d == 0 || d >= self.dim() {
            return Err(Error::input(format!(
                "projection dimension {d} must be in 1..{}",
                self.dim()
            )));
        }
        match self {
            ConvexBody::Box(b) => Ok(ConvexBody::Box(AxisBox {
                lower: b.lower[..d].to_vec(),
                upper: b.upper[..d].to_vec(),
            })),
            ConvexBody::Ball(b) => Ok(ConvexBody::Ball(Ball {
                center: b.center.truncate(d)?,
                radius: b.radius,
            })),
            ConvexBody::Simplex(s) => project_vertices(s.vertices(), d),
            ConvexBody::Polytope(p) => project_vertices(p.vertices(), d),
        }
    }
}

fn project_vertices(vertices: &[Point], d: usize) -> Result<ConvexBody> {
    let projected: Vec<Point> = vertices
        .iter()
        .map(|v| v.truncate(d))
        .collect::<Result<_>>()?;
    ConvexBody::polytope(&projected)
}

fn vertex_bounds(vertices: &[Point]) -> AxisBox {
    let d = vertices[0].dim();
    let mut lower = vec![f64::INFINITY; d];
    let mut upper = vec![f64::NEG_INFINITY; d];
    for v in vertices {
        for k in 0..d {
            lower[k] = lower[k].min(v[k]);
            upper[k] = upper[k].max(v[k]);
        }
    }
    AxisBox { lower, upper }
}
