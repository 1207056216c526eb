//! Classification when a block of covariates is missing at random: the
//! oracle and plug-in rules on both the observed and the unobserved branch.
//!
//!     cargo run --release --example missing_covariates

use convexclass::bodies::ConvexBody;
use convexclass::classify::FitOptions;
use convexclass::harness::{conditional_error_on, stream_rng, Scenario};
use convexclass::missing::{
    bayes_missing, fit_missing, predict_missing, BayesOracleMissing, KernelSpec, Layout, MissingnessMechanism,
};

fn main() -> convexclass::Result<()> {
    // x in R^2 is always seen, v in R^1 only sometimes; class 1 shows v more often.
    let layout = Layout::new(2, 1)?;
    let oracle = BayesOracleMissing::new(
        ConvexBody::unit_box(3),
        ConvexBody::boxed(vec![0.5, 0.0, 0.0], vec![1.5, 1.0, 1.0])?,
        0.5,
        MissingnessMechanism::constant(0.8, 0.3),
        layout,
    )?;
    let x = [0.75, 0.5];
    println!("oracle at x = {x:?}: v seen -> {}, v missing -> {}", bayes_missing(&oracle, &x, Some(&[0.5]))?, bayes_missing(&oracle, &x, None)?);

    let scenario = Scenario::Missing(oracle);
    let test = scenario.draw_n(50_000, &mut stream_rng(4, 1))?;
    let bayes = conditional_error_on(|x, v| scenario.bayes(x, v), &scenario, &test)?;
    println!("Bayes risk {:.4}", bayes.estimate);

    let train = scenario.draw_n(4000, &mut stream_rng(4, 0))?;
    for n in [100, 1000, 4000] {
        let model = fit_missing(&train[..n], layout, KernelSpec::default(), FitOptions::default())?;
        let err = conditional_error_on(|x, v| predict_missing(&model, x, v), &scenario, &test)?;
        let seen = train[..n].iter().filter(|s| s.v.is_some()).count();
        println!(
            "n = {n:>4} ({seen} complete cases): h = {:.3}, error {:.4} (excess {:+.4}); at x: seen -> {}, missing -> {}",
            model.bandwidth,
            err.estimate,
            err.estimate - bayes.estimate,
            predict_missing(&model, &x, Some(&[0.5]))?,
            predict_missing(&model, &x, None)?
        );
    }
    Ok(())
}
