//! Reference implementations used only to check the library: a dense simplex
//! LP for hull membership, brute-force facet enumeration in two and three
//! dimensions, a monotone-chain shoelace area and Euclidean projection onto
//! the probability simplex.
#![allow(dead_code)]

use convexclass::geometry::Point;
use rand::Rng;

pub fn random_points<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new((0..d).map(|_| rng.random::<f64>()).collect()).unwrap())
        .collect()
}

/// Phase-one simplex for `{lambda >= 0, sum lambda = 1, sum lambda_i p_i = x}`.
/// Returns the minimum total infeasibility (0 when `x` is in the hull).
pub fn lp_infeasibility(points: &[Point], x: &[f64]) -> f64 {
    let n = points.len();
    let d = x.len();
    let m = d + 1;
    // rows: coordinates then the convexity row; columns: lambdas, artificials, rhs
    let cols = n + m + 1;
    let mut t = vec![vec![0.0; cols]; m + 1];
    for r in 0..m {
        let rhs = if r < d { x[r] } else { 1.0 };
        let sign = if rhs < 0.0 { -1.0 } else { 1.0 };
        for (j, p) in points.iter().enumerate() {
            t[r][j] = sign * if r < d { p[r] } else { 1.0 };
        }
        t[r][n + r] = 1.0;
        t[r][cols - 1] = sign * rhs;
    }
    // objective row: minimise the sum of artificials, kept in reduced form
    for j in 0..cols {
        t[m][j] = -(0..m).map(|r| t[r][j]).sum::<f64>();
    }
    for r in 0..m {
        t[m][n + r] = 0.0;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    for _ in 0..10_000 {
        // Bland's rule
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < -1e-12) else {
            break;
        };
        let mut leave = None;
        let mut best = f64::INFINITY;
        for r in 0..m {
            if t[r][enter] > 1e-12 {
                let ratio = t[r][cols - 1] / t[r][enter];
                if ratio < best - 1e-15 || (ratio <= best + 1e-15 && leave.is_some_and(|l: usize| basis[r] < basis[l])) {
                    best = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else { break };
        let piv = t[lr][enter];
        for v in t[lr].iter_mut() {
            *v /= piv;
        }
        for r in 0..=m {
            if r != lr {
                let f = t[r][enter];
                if f != 0.0 {
                    for j in 0..cols {
                        t[r][j] -= f * t[lr][j];
                    }
                }
            }
        }
        basis[lr] = enter;
    }
    (-t[m][cols - 1]).max(0.0)
}

pub fn lp_contains(points: &[Point], x: &[f64], tol: f64) -> bool {
    lp_infeasibility(points, x) <= tol
}

/// Indices of points not in the hull of the others.
pub fn lp_extreme_indices(points: &[Point]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let others: Vec<Point> = points
                .iter()
                .enumerate()
                .filter(|&(j, p)| j != i && p != &points[i])
                .map(|(_, p)| p.clone())
                .collect();
            others.is_empty() || lp_infeasibility(&others, &points[i]) > 1e-9
        })
        .collect()
}

/// Supporting halfspaces `a . x <= b` with unit `a`, from every pair (d = 2)
/// or triple (d = 3) of points whose hyperplane leaves all points on one side.
pub fn facets(points: &[Point]) -> Vec<(Vec<f64>, f64)> {
    let d = points[0].dim();
    let scale = points
        .iter()
        .flat_map(|p| p.iter().map(|c| c.abs()))
        .fold(1.0_f64, f64::max);
    let eps = 1e-12 * scale;
    let mut out = Vec::new();
    let mut consider = |normal: Vec<f64>, anchor: &Point| {
        let len = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len < 1e-14 * scale * scale {
            return;
        }
        let a: Vec<f64> = normal.iter().map(|c| c / len).collect();
        let b: f64 = a.iter().zip(anchor.iter()).map(|(x, y)| x * y).sum();
        let side = |p: &Point| a.iter().zip(p.iter()).map(|(x, y)| x * y).sum::<f64>() - b;
        if points.iter().all(|p| side(p) <= eps) {
            out.push((a.clone(), b));
        }
        if points.iter().all(|p| side(p) >= -eps) {
            out.push((a.iter().map(|c| -c).collect(), -b));
        }
    };
    let n = points.len();
    match d {
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    let (p, q) = (&points[i], &points[j]);
                    consider(vec![q[1] - p[1], p[0] - q[0]], p);
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let (p, q, r) = (&points[i], &points[j], &points[k]);
                        let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
                        let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
                        let c = vec![
                            u[1] * v[2] - u[2] * v[1],
                            u[2] * v[0] - u[0] * v[2],
                            u[0] * v[1] - u[1] * v[0],
                        ];
                        consider(c, p);
                    }
                }
            }
        }
        _ => panic!("facet oracle supports d = 2 and d = 3 only"),
    }
    out
}

pub fn facet_contains(facets: &[(Vec<f64>, f64)], x: &[f64], tol: f64) -> bool {
    facets
        .iter()
        .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() - b <= tol)
}

/// Andrew's monotone chain, counter-clockwise, collinear points dropped.
pub fn monotone_chain(points: &[Point]) -> Vec<[f64; 2]> {
    let mut p: Vec<[f64; 2]> = points.iter().map(|q| [q[0], q[1]]).collect();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn shoelace(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    twice.abs() / 2.0
}

/// Euclidean projection onto `{x >= 0, sum x = 1}` by the sort-and-threshold rule.
pub fn project_probability_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cum += ui;
        let t = (cum - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Volume of the hull of a point set from its enumerated 3D facets: each
/// facet's points are fanned around their centroid and coned to an interior point.
pub fn facet_volume_3d(points: &[Point]) -> f64 {
    let c: Vec<f64> = (0..3).map(|k| points.iter().map(|p| p[k]).sum::<f64>() / points.len() as f64).collect();
    let mut seen: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut vol = 0.0;
    for (a, b) in facets(points) {
        if seen.iter().any(|(a2, b2)| euclid(a2, &a) < 1e-9 && (b2 - b).abs() < 1e-9) {
            continue;
        }
        let on: Vec<&Point> = points
            .iter()
            .filter(|p| (a.iter().zip(p.iter()).map(|(x, y)| x * y).sum::<f64>() - b).abs() < 1e-9)
            .collect();
        // order the facet's points by angle in the facet plane
        let fc: Vec<f64> = (0..3).map(|k| on.iter().map(|p| p[k]).sum::<f64>() / on.len() as f64).collect();
        let e1: Vec<f64> = {
            let v: Vec<f64> = (0..3).map(|k| on[0][k] - fc[k]).collect();
            let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / l).collect()
        };
        let e2 = [
            a[1] * e1[2] - a[2] * e1[1],
            a[2] * e1[0] - a[0] * e1[2],
            a[0] * e1[1] - a[1] * e1[0],
        ];
        let mut ring: Vec<(f64, &Point)> = on
            .iter()
            .map(|p| {
                let r: Vec<f64> = (0..3).map(|k| p[k] - fc[k]).collect();
                let x: f64 = r.iter().zip(&e1).map(|(a, b)| a * b).sum();
                let y: f64 = r.iter().zip(&e2).map(|(a, b)| a * b).sum();
                (y.atan2(x), *p)
            })
            .collect();
        ring.sort_by(|a, b| a.0.total_cmp(&b.0));
        let height = b - a.iter().zip(&c).map(|(x, y)| x * y).sum::<f64>();
        let mut area = 0.0;
        for i in 0..ring.len() {
            let (p, q) = (ring[i].1, ring[(i + 1) % ring.len()].1);
            let u: Vec<f64> = (0..3).map(|k| p[k] - fc[k]).collect();
            let v: Vec<f64> = (0..3).map(|k| q[k] - fc[k]).collect();
            let cr = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
            area += cr.iter().map(|x| x * x).sum::<f64>().sqrt() / 2.0;
        }
        vol += area * height / 3.0;
        seen.push((a, b));
    }
    vol
}
