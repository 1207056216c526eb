//! A consistency curve driven by the same flat config the CLI reads.
//!
//!     cargo run --release --example consistency_experiment

use convexclass::cli::config::{Experiment, RawConfig};
use convexclass::harness::consistency_curve;

const CONFIG: &str = "\
seed = 7
sizes = 50, 200, 1000
replicates = 5
mc_test_points = 5000
bayes_test_points = 20000
output_dir = out
scenario.kind = complete
scenario.p = 0.5
scenario.c1.type = ball
scenario.c1.center = 0, 0
scenario.c1.radius = 1
scenario.c0.type = box
scenario.c0.lower = 0, -1
scenario.c0.upper = 2, 1
";

fn main() -> convexclass::Result<()> {
    let mut raw = RawConfig::parse(CONFIG)?;
    // Command-line style override.
    raw.set("replicates", "4");
    let Experiment::Consistency(cfg) = raw.experiment()? else {
        unreachable!("config asks for a consistency run")
    };
    let report = consistency_curve(&cfg)?;
    println!("Bayes risk {:.4} +- {:.4} ({} estimator)", report.bayes.estimate, report.bayes.stderr, report.estimator.name());
    for s in report.summary() {
        println!(
            "n = {:>4}: median {:.4} [{:.4}, {:.4}], excess {:+.4}, {} ok / {} failed",
            s.n, s.median, s.q25, s.q75, s.median_excess, s.ok, s.failed
        );
    }
    println!("{}", report.summary_json()?);
    Ok(())
}
