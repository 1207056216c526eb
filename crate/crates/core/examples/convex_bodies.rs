//! Ground-truth bodies: sampling, exact volumes, projections and how a hull of
//! uniform draws approaches its body.
//!
//!     cargo run --example convex_bodies

use convexclass::bodies::ConvexBody;
use convexclass::geometry::{build_hull, hausdorff_estimate, symdiff_measure, volume};
use convexclass::harness::stream_rng;
use convexclass::pt;

fn main() -> convexclass::Result<()> {
    let bodies = [
        ("unit cube", ConvexBody::unit_box(3)),
        ("unit ball", ConvexBody::ball(pt![0, 0, 0], 1.0)?),
        ("simplex", ConvexBody::simplex(vec![pt![0, 0, 0], pt![1, 0, 0], pt![0, 1, 0], pt![0, 0, 1]])?),
        ("octahedron", ConvexBody::polytope(&[
            pt![1, 0, 0], pt![-1, 0, 0], pt![0, 1, 0], pt![0, -1, 0], pt![0, 0, 1], pt![0, 0, -1],
        ])?),
    ];
    let mut rng = stream_rng(1, 0);
    println!("{:<11} {:>9} {:>9} {:>10} {:>10}", "body", "volume", "hull vol", "hausdorff", "symdiff");
    for (name, body) in &bodies {
        let pts = body.sample_n(2000, &mut rng)?;
        let hull = build_hull(&pts, 3, 1.0)?;
        let hv = volume(&hull, 1, &mut rng)?;
        let h = hausdorff_estimate(&hull, body, 2000, &mut rng)?;
        let sd = symdiff_measure(&hull, body, 20_000, &mut rng)?;
        println!("{name:<11} {:>9.5} {:>9.5} {h:>10.5} {:>10.5}", body.volume_exact().value, hv.value, sd.value);
    }

    // Projection onto the first two coordinates is itself a convex body.
    let shadow = bodies[1].1.project(2)?;
    println!("ball shadow: {:?}, area {:.5}", shadow, shadow.volume_exact().value);
    Ok(())
}
