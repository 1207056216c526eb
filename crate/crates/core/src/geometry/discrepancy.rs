//! Discrepancy between a hull estimate and the body it estimates.

use rand::Rng;

use super::{contains, distance_to_hull, HullEstimate, HullShape, VolumeEstimate};
use super::{check_dim, volume, DEFAULT_MEMBERSHIP_TOL};
use crate::bodies::{AxisBox, ConvexBody};
use crate::error::{Error, Result};

/// Largest distance from `n_probe` uniform draws on `body` to the hull.
///
/// When the hull sits inside the body this is a lower-bound estimate of their
/// Hausdorff distance, `sup_{t in body} inf_{y in hull} |t - y|`, converging
/// from below as `n_probe` grows.
pub fn hausdorff_estimate<R: Rng + ?Sized>(
    hull: &HullEstimate,
    body: &ConvexBody,
    n_probe: usize,
    rng: &mut R,
) -> Result<f64> {
    check_dim(hull.dim, body.dim())?;
    if n_probe == 0 {
        return Err(Error::input("hausdorff estimate needs at least one probe"));
    }
    let mut worst = 0.0_f64;
    for _ in 0..n_probe {
        let t = body.sample_uniform(rng)?;
        worst = worst.max(distance_to_hull(hull, &t)?);
    }
    Ok(worst)
}

/// Lebesgue measure of the symmetric difference between hull and body.
///
/// If the hull lies inside the body and both volumes are exact, this is
/// `vol(body) - vol(hull)` with zero standard error. Otherwise it is a Monte
/// Carlo count over the bounding box of the union.
pub fn symdiff_measure<R: Rng + ?Sized>(
    hull: &HullEstimate,
    body: &ConvexBody,
    mc_samples: usize,
    rng: &mut R,
) -> Result<VolumeEstimate> {
    check_dim(hull.dim, body.dim())?;
    if let HullShape::Hull(p) = &hull.shape {
        let mut inside = true;
        for v in p.vertices() {
            if !body.contains(v, DEFAULT_MEMBERSHIP_TOL)? {
                inside = false;
                break;
            }
        }
        let body_vol = body.volume_exact();
        if inside && body_vol.exact {
            let hull_vol = volume(hull, mc_samples.max(1), rng)?;
            if hull_vol.exact {
                return Ok(VolumeEstimate::exact((body_vol.value - hull_vol.value).max(0.0)));
            }
        }
    }
    if mc_samples == 0 {
        return Err(Error::input(
            "Monte Carlo symmetric difference needs at least one sample",
        ));
    }
    let region = hull_bounds(hull).union(&body.bounding_box());
    let box_volume = region.volume();
    let mut hits = 0usize;
    for _ in 0..mc_samples {
        let x = region.sample(rng);
        let in_hull = contains(hull, &x, DEFAULT_MEMBERSHIP_TOL)?;
        let in_body = body.contains(&x, 0.0)?;
        if in_hull != in_body {
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

fn hull_bounds(hull: &HullEstimate) -> AxisBox {
    let (lo, hi) = match &hull.shape {
        HullShape::Hull(p) => p.bounds(),
        HullShape::FallbackBall { radius } => (vec![-radius; hull.dim], vec![*radius; hull.dim]),
    };
    // A flat hull still needs a box with positive extent to be valid.
    let hi = hi
        .iter()
        .zip(&lo)
        .map(|(h, l)| if h > l { *h } else { l + f64::EPSILON.max(l.abs() * 1e-12) })
        .collect();
    AxisBox::new(lo, hi).expect("finite hull bounds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_hull;
    use crate::pt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn corners() -> HullEstimate {
        build_hull(&[pt![0, 0], pt![1, 0], pt![1, 1], pt![0, 1]], 2, 1.0).unwrap()
    }

    #[test]
    fn full_hull_has_zero_discrepancy() {
        let body = ConvexBody::unit_box(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(hausdorff_estimate(&corners(), &body, 1000, &mut rng).unwrap(), 0.0);
        let s = symdiff_measure(&corners(), &body, 1000, &mut rng).unwrap();
        assert_eq!(s.value, 0.0);
        assert!(s.exact);
    }

    #[test]
    fn triangle_inside_square() {
        let tri = build_hull(&[pt![0, 0], pt![1, 0], pt![0, 1]], 2, 1.0).unwrap();
        let s = symdiff_measure(
            &tri,
            &ConvexBody::unit_box(2),
            10,
            &mut ChaCha8Rng::seed_from_u64(2),
        )
        .unwrap();
        assert_eq!(s.value, 0.5);
    }

    #[test]
    fn single_point_hausdorff_approaches_far_corner() {
        let origin = build_hull(&[pt![0, 0]], 2, 1.0).unwrap();
        let h = hausdorff_estimate(
            &origin,
            &ConvexBody::unit_box(2),
            100_000,
            &mut ChaCha8Rng::seed_from_u64(3),
        )
        .unwrap();
        assert!(h <= std::f64::consts::SQRT_2);
        assert!(std::f64::consts::SQRT_2 - h < 0.05);
    }

    #[test]
    fn fallback_ball_uses_monte_carlo() {
        // Ball of radius 1 about the origin against [0,1]^2: the quarter disk is
        // shared, so the difference is (pi - pi/4) + (1 - pi/4) = 1 + pi/2.
        let fb = build_hull(&[], 2, 1.0).unwrap();
        let s = symdiff_measure(
            &fb,
            &ConvexBody::unit_box(2),
            200_000,
            &mut ChaCha8Rng::seed_from_u64(4),
        )
        .unwrap();
        assert!(!s.exact);
        let truth = 1.0 + std::f64::consts::FRAC_PI_2;
        assert!((s.value - truth).abs() < 4.0 * s.std_error, "{s:?}");
    }

    #[test]
    fn overhanging_hull_counts_both_sides() {
        // [0.5,1.5]x[0,1] hull vs unit square: difference is 0.5 + 0.5.
        let shifted =
            build_hull(&[pt![0.5, 0], pt![1.5, 0], pt![1.5, 1], pt![0.5, 1]], 2, 1.0).unwrap();
        let s = symdiff_measure(
            &shifted,
            &ConvexBody::unit_box(2),
            100_000,
            &mut ChaCha8Rng::seed_from_u64(5),
        )
        .unwrap();
        assert!((s.value - 1.0).abs() < 4.0 * s.std_error.max(1e-3));
    }
}
