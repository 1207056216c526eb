//! Fitting the convex-hull plug-in rule and watching its error approach the
//! Bayes risk.
//!
//!     cargo run --release --example plugin_classifier

use convexclass::bodies::ConvexBody;
use convexclass::classify::{fit_complete, plugin_posterior, predict_complete, BayesOracleComplete, FitOptions, LabeledSample};
use convexclass::harness::{conditional_error_on, stream_rng, Scenario};
use convexclass::pt;

fn main() -> convexclass::Result<()> {
    let scenario = Scenario::Complete(BayesOracleComplete::new(
        ConvexBody::ball(pt![0, 0], 1.0)?,
        ConvexBody::simplex(vec![pt![0, -1], pt![2, 0], pt![0, 1]])?,
        0.4,
    )?);
    let test = scenario.draw_n(50_000, &mut stream_rng(3, 1))?;
    let bayes = conditional_error_on(|x, v| scenario.bayes(x, v), &scenario, &test)?;
    println!("Bayes risk {:.4}", bayes.estimate);

    let train = scenario.draw_n(5000, &mut stream_rng(3, 0))?;
    for n in [20, 100, 1000, 5000] {
        let data: Vec<LabeledSample> = train[..n].iter().map(|s| LabeledSample { x: s.x.clone(), y: s.y }).collect();
        let model = fit_complete(&data, FitOptions::default())?;
        let err = conditional_error_on(|x, _| predict_complete(&model, x), &scenario, &test)?;
        println!(
            "n = {n:>4}: p_hat {:.3}, hull areas {:.3} / {:.3}, error {:.4} (excess {:+.4})",
            model.p_hat,
            model.vol1.value,
            model.vol0.value,
            err.estimate,
            err.estimate - bayes.estimate
        );
        if n == 5000 {
            for x in [[-0.5, 0.0], [0.5, 0.0], [1.5, 0.0], [0.0, 2.0]] {
                println!("  {x:?}: plug-in posterior {:.3}, label {}", plugin_posterior(&model, &x)?, predict_complete(&model, &x)?);
            }
        }
    }
    Ok(())
}
