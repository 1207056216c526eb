//! Wolfe's minimum-norm-point iteration over convex-combination weights.
//!
//! Given vertices `v_i` and a query `x`, finds the point of `conv{v_i}` closest
//! to `x`. The working set ("corral") stays affinely independent; each major
//! step adds the vertex most violating the optimality condition, each minor step
//! moves toward the affine minimiser of the corral and drops vertices whose
//! weight reaches zero.

use nalgebra::{DMatrix, DVector};

use super::linalg::{dot, norm2};
use super::Point;
use crate::error::{Error, Result};

pub const MNP_MAX_ITER: usize = 10_000;

/// Stop once `|y|^2 - min_i <y, v_i - x>` falls below this (scaled by the squared radius).
pub const MNP_GAP_TOL: f64 = 1e-12;

const WEIGHT_EPS: f64 = 1e-12;
const ZERO_RTOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct MinNormPoint {
    pub distance: f64,
    /// Closest point of the hull to the query.
    pub nearest: Vec<f64>,
    /// Vertex indices with positive weight and their weights.
    pub support: Vec<(usize, f64)>,
    pub iterations: usize,
}

pub fn min_norm_point(vertices: &[Point], query: &[f64]) -> Result<MinNormPoint> {
    if vertices.is_empty() {
        return Err(Error::input("minimum-norm point of an empty vertex set"));
    }
    let d = query.len();
    let n = vertices.len();
    let mut shifted = Vec::with_capacity(n * d);
    for v in vertices {
        super::check_dim(d, v.dim())?;
        shifted.extend(v.iter().zip(query).map(|(a, b)| a - b));
    }
    let q = |i: usize| &shifted[i * d..(i + 1) * d];

    let radius2 = (0..n).map(|i| norm2(q(i))).fold(0.0_f64, f64::max).max(1.0);
    let zero2 = (ZERO_RTOL * radius2.sqrt()).powi(2);

    let start = (0..n)
        .min_by(|&a, &b| norm2(q(a)).total_cmp(&norm2(q(b))))
        .expect("nonempty");
    let mut corral = vec![start];
    let mut weights = vec![1.0];
    let mut y = q(start).to_vec();

    let finish = |y: Vec<f64>, corral: &[usize], weights: &[f64], iterations: usize| {
        let distance = norm2(&y).sqrt();
        let nearest = y.iter().zip(query).map(|(a, b)| a + b).collect();
        MinNormPoint {
            distance,
            nearest,
            support: corral.iter().copied().zip(weights.iter().copied()).collect(),
            iterations,
        }
    };

    for iteration in 0..MNP_MAX_ITER {
        let yy = norm2(&y);
        if yy <= zero2 {
            return Ok(finish(vec![0.0; d], &corral, &weights, iteration));
        }
        let (j, best) = (0..n)
            .map(|i| (i, dot(&y, q(i))))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if yy - best <= MNP_GAP_TOL * radius2 || corral.contains(&j) {
            return Ok(finish(y, &corral, &weights, iteration));
        }
        corral.push(j);
        weights.push(0.0);

        let mut first_minor = true;
        loop {
            let alpha = affine_minimizer(&corral, &q);
            if alpha.iter().all(|&a| a > WEIGHT_EPS) {
                weights = alpha;
                break;
            }
            let mut theta = 1.0_f64;
            for (a, w) in alpha.iter().zip(&weights) {
                if *a <= WEIGHT_EPS {
                    let denom = w - a;
                    theta = theta.min(if denom > 0.0 { w / denom } else { 0.0 });
                }
            }
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let last = corral.len() - 1;
            if first_minor && weights[last] <= WEIGHT_EPS {
                // The entering vertex cannot carry weight: no further progress is possible.
                corral.pop();
                weights.pop();
                let total: f64 = weights.iter().sum();
                weights.iter_mut().for_each(|w| *w /= total);
                return Ok(finish(y, &corral, &weights, iteration));
            }
            first_minor = false;
            let before = corral.len();
            let mut keep = weights.iter().map(|&w| w > WEIGHT_EPS).collect::<Vec<_>>();
            if keep.iter().all(|&k| k) {
                let drop = weights
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(i, _)| i)
                    .expect("nonempty");
                keep[drop] = false;
            }
            let mut k = keep.iter();
            corral.retain(|_| *k.next().unwrap());
            let mut k = keep.iter();
            weights.retain(|_| *k.next().unwrap());
            debug_assert!(corral.len() < before);
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            if corral.len() == 1 {
                weights[0] = 1.0;
                break;
            }
        }

        y = vec![0.0; d];
        for (&i, &w) in corral.iter().zip(&weights) {
            for (yk, qk) in y.iter_mut().zip(q(i)) {
                *yk += w * qk;
            }
        }
        if corral.len() == d + 1 {
            // A full-dimensional simplex with strictly positive weights contains the query.
            return Ok(finish(vec![0.0; d], &corral, &weights, iteration + 1));
        }
    }
    Err(Error::numerical(
        format!("minimum-norm point did not converge in {MNP_MAX_ITER} iterations"),
        Some(norm2(&y).sqrt()),
    ))
}

/// Weights (summing to one) of the point of minimum norm in the affine hull of the corral.
fn affine_minimizer<'a>(corral: &[usize], q: &impl Fn(usize) -> &'a [f64]) -> Vec<f64> {
    let k = corral.len();
    if k == 1 {
        return vec![1.0];
    }
    let base = q(corral[0]);
    let dirs: Vec<Vec<f64>> = corral[1..]
        .iter()
        .map(|&i| q(i).iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let m = k - 1;
    let gram = DMatrix::from_fn(m, m, |r, c| dot(&dirs[r], &dirs[c]));
    let rhs = DVector::from_fn(m, |r, _| -dot(&dirs[r], base));
    let beta = match gram.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => gram
            .svd(true, true)
            .solve(&rhs, 1e-14)
            .unwrap_or_else(|_| DVector::zeros(m)),
    };
    let mut alpha = Vec::with_capacity(k);
    alpha.push(1.0 - beta.sum());
    alpha.extend(beta.iter().copied());
    alpha
}
