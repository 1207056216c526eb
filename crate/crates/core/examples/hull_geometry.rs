//! Hull construction, membership, distance and volume for a small point cloud.
//!
//!     cargo run --example hull_geometry

use convexclass::cli::persist::hull_to_json;
use convexclass::geometry::{build_hull, contains, distance_to_hull, min_norm_point, volume, DEFAULT_MEMBERSHIP_TOL};
use convexclass::harness::stream_rng;
use convexclass::pt;

fn main() -> convexclass::Result<()> {
    // A square with an interior point and a point on an edge.
    let pts = vec![pt![0, 0], pt![2, 0], pt![2, 2], pt![0, 2], pt![1, 1], pt![1, 0]];
    let hull = build_hull(&pts, 2, 1.0)?;
    println!("{} points, {} extreme points, affine dimension {}", pts.len(), hull.vertex_count(), hull.affine_dim());

    let mut rng = stream_rng(0, 0);
    let vol = volume(&hull, 1, &mut rng)?;
    println!("area = {} (exact: {})", vol.value, vol.exact);

    for q in [[1.0, 1.0], [2.0, 1.0], [3.0, 1.0], [3.0, 3.0]] {
        println!(
            "{q:?}: inside = {}, distance = {:.6}",
            contains(&hull, &q, DEFAULT_MEMBERSHIP_TOL)?,
            distance_to_hull(&hull, &q)?
        );
    }

    // The nearest point itself, with its convex weights on the vertices.
    let mnp = min_norm_point(hull.polytope().unwrap().vertices(), &[3.0, 3.0])?;
    println!("nearest point to (3, 3): {:?}, weights {:?}, {} iterations", mnp.nearest, mnp.support, mnp.iterations);

    // A flat hull in 3D: zero volume, but distances still work.
    let flat = build_hull(&[pt![0, 0, 0], pt![1, 0, 0], pt![0, 1, 0]], 3, 1.0)?;
    println!(
        "flat triangle: affine dimension {}, volume {}, distance to (0.2, 0.2, 1) = {}",
        flat.affine_dim(),
        volume(&flat, 1, &mut rng)?.value,
        distance_to_hull(&flat, &[0.2, 0.2, 1.0])?
    );

    // An empty class falls back to a ball about the origin.
    let empty = build_hull(&[], 2, 1.0)?;
    println!("empty sample: fallback = {}, volume = {:.6}", empty.is_fallback(), volume(&empty, 1, &mut rng)?.value);

    println!("{}", hull_to_json(&hull)?);
    Ok(())
}
