//! The optimal rule when both classes are uniform on known convex sets.
//!
//!     cargo run --example bayes_oracle

use convexclass::bodies::ConvexBody;
use convexclass::classify::{bayes_complete, bayes_posterior, BayesOracleComplete};
use convexclass::harness::{conditional_error_on, estimate_error, stream_rng, Scenario};
use convexclass::pt;

fn main() -> convexclass::Result<()> {
    // Class 1 on the unit disk, class 0 on the square [0, 2] x [-1, 1].
    let oracle = BayesOracleComplete::new(
        ConvexBody::ball(pt![0, 0], 1.0)?,
        ConvexBody::boxed(vec![0.0, -1.0], vec![2.0, 1.0])?,
        0.5,
    )?;
    for x in [[-0.5, 0.0], [0.5, 0.0], [1.5, 0.0], [3.0, 0.0]] {
        println!(
            "x = {x:?}: posterior {:.4}, decision {}",
            bayes_posterior(&oracle, &x)?,
            bayes_complete(&oracle, &x)?
        );
    }

    // On the overlap the denser class wins: density 1/pi beats 1/4, so the
    // risk is the square's mass on the half disk.
    let scenario = Scenario::Complete(oracle);
    let bayes = |x: &[f64], v: Option<&[f64]>| scenario.bayes(x, v);
    let ind = estimate_error(bayes, &scenario, 200_000, &mut stream_rng(2, 0))?;
    let test = scenario.draw_n(200_000, &mut stream_rng(2, 1))?;
    let cond = conditional_error_on(bayes, &scenario, &test)?;
    println!("exact risk      {:.5}", std::f64::consts::PI / 16.0);
    println!("indicator       {:.5} +- {:.5}", ind.estimate, ind.stderr);
    println!("conditional     {:.5} +- {:.5}", cond.estimate, cond.stderr);
    Ok(())
}
