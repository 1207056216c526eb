//! Hull-to-body discrepancies as the sample grows, written as CSV.
//!
//!     cargo run --release --example hull_convergence > hull.csv

use convexclass::bodies::ConvexBody;
use convexclass::harness::{hull_convergence_curve, HullConvergenceConfig};
use convexclass::pt;

fn main() -> convexclass::Result<()> {
    let mut cfg = HullConvergenceConfig::new(ConvexBody::ball(pt![0, 0, 0], 1.0)?, vec![50, 200, 1000, 5000], 5, 6);
    cfg.n_probe = 1000;
    // With p < 1 the class count is random and may be zero for small n.
    cfg.p = 0.5;
    cfg.force_empty = true;
    let report = hull_convergence_curve(&cfg)?;
    report.write_csv(std::io::stdout().lock())?;
    for s in report.summary() {
        eprintln!(
            "n = {:>4}: median hausdorff {:.4}, symdiff {:.4}, volume {:.4}",
            s.n, s.median_hausdorff, s.median_symdiff, s.median_volume
        );
    }
    Ok(())
}
