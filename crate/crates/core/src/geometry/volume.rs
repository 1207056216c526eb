//! Lebesgue measure of hull estimates.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{det, factorial, scale};
use super::{HullEstimate, HullShape, Point, VPolytope, DEFAULT_MEMBERSHIP_TOL};
use crate::error::{Error, Result};

/// A measure value with its Monte Carlo standard error (zero on exact paths).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub std_error: f64,
    pub exact: bool,
}

impl VolumeEstimate {
    pub fn exact(value: f64) -> Self {
        VolumeEstimate {
            value,
            std_error: 0.0,
            exact: true,
        }
    }
}

/// Volume of the unit-radius ball scaled to `radius` in `dim` dimensions.
pub fn ball_volume(dim: usize, radius: f64) -> f64 {
    // V_0 = 1, V_1 = 2, V_d = V_{d-2} * 2*pi / d
    let mut v = if dim % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if dim % 2 == 0 { 2 } else { 3 };
    while k <= dim {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v * radius.powi(dim as i32)
}

/// Volume of a hull estimate: exact up to three dimensions, Monte Carlo above.
/// Degenerate hulls have volume exactly zero. `mc_samples` is only consulted on
/// the Monte Carlo path.
pub fn volume<R: Rng + ?Sized>(
    hull: &HullEstimate,
    mc_samples: usize,
    rng: &mut R,
) -> Result<VolumeEstimate> {
    match &hull.shape {
        HullShape::FallbackBall { radius } => {
            Ok(VolumeEstimate::exact(ball_volume(hull.dim, *radius)))
        }
        HullShape::Hull(p) => polytope_volume(p, mc_samples, rng),
    }
}

pub(crate) fn polytope_volume<R: Rng + ?Sized>(
    p: &VPolytope,
    mc_samples: usize,
    rng: &mut R,
) -> Result<VolumeEstimate> {
    if p.is_degenerate() {
        return Ok(VolumeEstimate::exact(0.0));
    }
    match p.dim() {
        1 => {
            let (lo, hi) = p.bounds();
            Ok(VolumeEstimate::exact(hi[0] - lo[0]))
        }
        2 => Ok(VolumeEstimate::exact(polygon_area(p))),
        3 => Ok(VolumeEstimate::exact(polyhedron_volume(p)?)),
        _ => monte_carlo_volume(p, mc_samples, rng),
    }
}

/// Fan triangulation about the vertex centroid, vertices ordered by angle.
fn polygon_area(p: &VPolytope) -> f64 {
    let c = p.centroid();
    let mut ring: Vec<&Point> = p.vertices().iter().collect();
    ring.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    let n = ring.len();
    (0..n)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            det(&[
                vec![a[0] - c[0], a[1] - c[1]],
                vec![b[0] - c[0], b[1] - c[1]],
            ])
            .abs()
                / 2.0
        })
        .sum()
}

/// Sum of tetrahedra joining the vertex centroid to each boundary triangle.
fn polyhedron_volume(p: &VPolytope) -> Result<f64> {
    let faces = boundary_triangles(p.vertices())?;
    let c = p.centroid();
    let v = p.vertices();
    Ok(faces
        .iter()
        .map(|&[a, b, e]| {
            let rows: Vec<Vec<f64>> = [a, b, e]
                .iter()
                .map(|&i| (0..3).map(|k| v[i][k] - c[k]).collect())
                .collect();
            det(&rows).abs() / factorial(3)
        })
        .sum())
}

/// Outward-oriented boundary triangles of a full-dimensional 3-polytope, by
/// incremental insertion over its extreme points.
pub(crate) fn boundary_triangles(pts: &[Point]) -> Result<Vec<[usize; 3]>> {
    let eps = 1e-12 * scale(pts).powi(3);
    let seed = initial_tetrahedron(pts)
        .ok_or_else(|| Error::numerical("3-d hull has no non-degenerate tetrahedron", None))?;
    let interior: Vec<f64> = (0..3)
        .map(|k| seed.iter().map(|&i| pts[i][k]).sum::<f64>() / 4.0)
        .collect();

    let orient = |f: [usize; 3]| -> [usize; 3] {
        if signed_height(pts, f, &interior) > 0.0 {
            [f[0], f[2], f[1]]
        } else {
            f
        }
    };
    let mut faces: Vec<[usize; 3]> = vec![
        orient([seed[0], seed[1], seed[2]]),
        orient([seed[0], seed[1], seed[3]]),
        orient([seed[0], seed[2], seed[3]]),
        orient([seed[1], seed[2], seed[3]]),
    ];

    for i in 0..pts.len() {
        if seed.contains(&i) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|&f| signed_height(pts, f, &pts[i]) > eps)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut visible_edges: HashSet<(usize, usize)> = HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for e in 0..3 {
                visible_edges.insert((f[e], f[(e + 1) % 3]));
            }
        }
        let mut next = Vec::with_capacity(faces.len() + 4);
        let mut horizon = Vec::new();
        for (f, &vis) in faces.iter().zip(&visible) {
            if !vis {
                next.push(*f);
                continue;
            }
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                if !visible_edges.contains(&(b, a)) {
                    horizon.push((a, b));
                }
            }
        }
        for (a, b) in horizon {
            next.push(orient([a, b, i]));
        }
        faces = next;
    }
    Ok(faces)
}

/// Positive when `x` is on the side the face normal points to.
fn signed_height(pts: &[Point], f: [usize; 3], x: &[f64]) -> f64 {
    let a = &pts[f[0]];
    let rows: Vec<Vec<f64>> = [&pts[f[1]][..], &pts[f[2]][..], x]
        .iter()
        .map(|p| (0..3).map(|k| p[k] - a[k]).collect())
        .collect();
    det(&rows)
}

fn initial_tetrahedron(pts: &[Point]) -> Option<[usize; 4]> {
    let s = scale(pts);
    let farthest = |score: &dyn Fn(&[f64]) -> f64| -> Option<usize> {
        (0..pts.len())
            .map(|i| (i, score(&pts[i])))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .filter(|&(_, v)| v > 1e-12 * s)
            .map(|(i, _)| i)
    };
    let a = 0;
    let b = farthest(&|p| super::linalg::dist(p, &pts[a]))?;
    let ab: Vec<f64> = (0..3).map(|k| pts[b][k] - pts[a][k]).collect();
    let c = farthest(&|p| {
        let ap: Vec<f64> = (0..3).map(|k| p[k] - pts[a][k]).collect();
        super::linalg::norm(&cross(&ab, &ap))
    })?;
    let d = farthest(&|p| signed_height(pts, [a, b, c], p).abs())?;
    Some([a, b, c, d])
}

fn cross(u: &[f64], v: &[f64]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn monte_carlo_volume<R: Rng + ?Sized>(
    p: &VPolytope,
    mc_samples: usize,
    rng: &mut R,
) -> Result<VolumeEstimate> {
    if mc_samples == 0 {
        return Err(Error::input(
            "Monte Carlo volume needs at least one sample",
        ));
    }
    let (lo, hi) = p.bounds();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut x = vec![0.0; p.dim()];
    let mut hits = 0usize;
    for _ in 0..mc_samples {
        for k in 0..p.dim() {
            x[k] = rng.random_range(lo[k]..=hi[k]);
        }
        if p.contains(&x, DEFAULT_MEMBERSHIP_TOL)? {
            hits += 1;
        }
    }
    let frac = hits as f64 / mc_samples as f64;
    Ok(VolumeEstimate {
        value: box_volume * frac,
        std_error: box_volume * (frac * (1.0 - frac) / mc_samples as f64).sqrt(),
        exact: false,
    })
}
