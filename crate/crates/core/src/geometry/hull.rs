use super::linalg::{dot, scale};
use super::mnp::min_norm_point;
use super::{check_dim, HullEstimate, HullShape, Point, VPolytope};
use crate::error::{Error, Result};

/// Points closer than this (relative to the coordinate scale) to the hull of
/// the current extreme set are not extreme.
const EXTREME_RTOL: f64 = 1e-12;

/// Convex hull of `points`, or the fallback ball of `fallback_radius` about the
/// origin if `points` is empty.
///
/// The returned vertex set is the extreme-point subset of the input, found by
/// growing a working extreme set: every input point is tested for membership in
/// the hull of that set, and a point found outside yields a separating
/// direction whose maximiser over the whole input is a new extreme point.
pub fn build_hull(points: &[Point], dim: usize, fallback_radius: f64) -> Result<HullEstimate> {
    if dim == 0 {
        return Err(Error::input("hull dimension must be positive"));
    }
    if !(fallback_radius > 0.0 && fallback_radius.is_finite()) {
        return Err(Error::input(format!(
            "fallback radius must be positive and finite, got {fallback_radius}"
        )));
    }
    for p in points {
        check_dim(dim, p.dim())?;
    }
    if points.is_empty() {
        return Ok(HullEstimate {
            dim,
            sample_count: 0,
            shape: HullShape::FallbackBall {
                radius: fallback_radius,
            },
        });
    }
    let vertices = extreme_points(points)?;
    Ok(HullEstimate {
        dim,
        sample_count: points.len(),
        shape: HullShape::Hull(VPolytope::from_extreme_points(dim, vertices)),
    })
}

fn extreme_points(points: &[Point]) -> Result<Vec<Point>> {
    let dim = points[0].dim();
    let tol = EXTREME_RTOL * scale(points);

    let mut ext: Vec<usize> = Vec::new();
    for k in 0..dim {
        let mut dir = vec![0.0; dim];
        dir[k] = 1.0;
        for sign in [1.0, -1.0] {
            dir[k] = sign;
            let j = argmax_direction(points, &dir);
            if !ext.contains(&j) {
                ext.push(j);
            }
        }
    }
    let mut ext_pts: Vec<Point> = ext.iter().map(|&i| points[i].clone()).collect();

    for (i, p) in points.iter().enumerate() {
        while !ext.contains(&i) {
            let r = min_norm_point(&ext_pts, p)?;
            if r.distance <= tol {
                break;
            }
            let dir: Vec<f64> = p.iter().zip(&r.nearest).map(|(a, b)| a - b).collect();
            let mut j = argmax_direction(points, &dir);
            if ext.contains(&j) {
                j = i;
            }
            ext.push(j);
            ext_pts.push(points[j].clone());
        }
    }

    // Drop anything that ended up inside the hull of the others.
    let mut k = 0;
    while k < ext_pts.len() && ext_pts.len() > 1 {
        let candidate = ext_pts.remove(k);
        if min_norm_point(&ext_pts, &candidate)?.distance <= tol {
            continue;
        }
        ext_pts.insert(k, candidate);
        k += 1;
    }
    Ok(ext_pts)
}

/// Index of the point maximising `<dir, p>`, ties broken toward the
/// lexicographically largest point so the winner is extreme.
fn argmax_direction(points: &[Point], dir: &[f64]) -> usize {
    let values: Vec<f64> = points.iter().map(|p| dot(p, dir)).collect();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let dnorm = dot(dir, dir).sqrt();
    let eps = 1e-12 * dnorm * scale(points);
    let mut winner: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if v >= best - eps {
            winner = match winner {
                Some(w) if lex_cmp(&points[w], &points[i]).is_ge() => Some(w),
                _ => Some(i),
            };
        }
    }
    winner.expect("nonempty point set")
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}
