//! Small dense helpers shared by the geometry routines.

use nalgebra::DMatrix;

use super::Point;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    norm2(a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Largest absolute coordinate across the points, at least 1.
pub(crate) fn scale(points: &[Point]) -> f64 {
    points
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0_f64, |m, c| m.max(c.abs()))
}

/// Relative tolerance below which a singular value counts as zero.
const RANK_RTOL: f64 = 1e-10;

/// Dimension of the affine span of the points.
pub(crate) fn affine_rank(points: &[Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let d = points[0].dim();
    let base = &points[0];
    let m = DMatrix::from_fn(points.len() - 1, d, |i, j| points[i + 1][j] - base[j]);
    let s = scale(points);
    m.svd(false, false).rank(RANK_RTOL * s)
}

/// Determinant of the square matrix whose rows are `rows`.
pub(crate) fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    match n {
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let (a, b, c) = (&rows[0], &rows[1], &rows[2]);
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
        }
        _ => DMatrix::from_fn(n, n, |i, j| rows[i][j]).determinant(),
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
