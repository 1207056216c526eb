//! Kernel-regression estimates of the observation probabilities compared with
//! a logistic truth, for two kernels and a few bandwidth constants.
//!
//!     cargo run --release --example kernel_missingness

use convexclass::bodies::ConvexBody;
use convexclass::classify::{FitOptions, Label};
use convexclass::harness::{stream_rng, Scenario};
use convexclass::missing::{
    fit_missing, kernel_q_hat, Bandwidth, BayesOracleMissing, KernelKind, KernelSpec, Layout, MissingnessMechanism,
    Propensity,
};

fn main() -> convexclass::Result<()> {
    let q1 = Propensity::Logistic { weights: vec![6.0, 0.0], bias: -3.0, lower: 0.1, upper: 0.9 };
    let layout = Layout::new(2, 1)?;
    let scenario = Scenario::Missing(BayesOracleMissing::new(
        ConvexBody::unit_box(3),
        ConvexBody::unit_box(3),
        0.5,
        MissingnessMechanism { q1: q1.clone(), q0: Propensity::constant(0.5) },
        layout,
    )?);
    let train = scenario.draw_n(8000, &mut stream_rng(5, 0))?;
    let grid: Vec<[f64; 2]> = (1..10).map(|i| [f64::from(i) / 10.0, 0.5]).collect();
    print!("{:<26}", "x1");
    for g in &grid {
        print!("{:>6.2}", g[0]);
    }
    print!("\n{:<26}", "truth");
    for g in &grid {
        print!("{:>6.3}", q1.eval(g)?);
    }
    println!();
    for kind in [KernelKind::Boxcar, KernelKind::Epanechnikov] {
        for c in [0.25, 0.5, 1.0] {
            let kernel = KernelSpec { kind, bandwidth: Bandwidth::Rule { c } };
            let model = fit_missing(&train, layout, kernel, FitOptions::default())?;
            print!("{:<26}", format!("{} c={c} h={:.3}", kind.name(), model.bandwidth));
            for g in &grid {
                print!("{:>6.3}", kernel_q_hat(&model, g, Label::One)?);
            }
            println!();
        }
    }
    Ok(())
}
