//! Bayes risks checked against closed forms.

use convexclass::bodies::ConvexBody;
use convexclass::classify::BayesOracleComplete;
use convexclass::geometry::Point;
use convexclass::harness::{conditional_error_on, estimate_error, stream_rng, Scenario};
use convexclass::missing::{BayesOracleMissing, Layout, MissingnessMechanism, Propensity};

fn check(scenario: &Scenario, want: f64, seed: u64) {
    let bayes = |x: &[f64], v: Option<&[f64]>| scenario.bayes(x, v);
    let test = scenario.draw_n(100_000, &mut stream_rng(seed, 0)).unwrap();
    let cond = conditional_error_on(bayes, scenario, &test).unwrap();
    assert!((cond.estimate - want).abs() <= 4.0 * cond.stderr, "conditional {cond:?} vs {want}");
    let ind = estimate_error(bayes, scenario, 100_000, &mut stream_rng(seed, 1)).unwrap();
    assert!((ind.estimate - want).abs() <= 4.0 * ind.stderr, "indicator {ind:?} vs {want}");
}

#[test]
fn overlapping_squares() {
    // Equal densities on the overlap, which carries half of each class.
    let s = Scenario::Complete(
        BayesOracleComplete::new(
            ConvexBody::unit_box(2),
            ConvexBody::boxed(vec![0.5, 0.0], vec![1.5, 1.0]).unwrap(),
            0.5,
        )
        .unwrap(),
    );
    check(&s, 0.25, 31);
}

#[test]
fn disk_against_square() {
    // The square's density 1/4 is the smaller one on the half disk it covers,
    // so the risk is (1/2)(1/4)(pi/2).
    let s = Scenario::Complete(
        BayesOracleComplete::new(
            ConvexBody::ball(Point::new(vec![0.0, 0.0]).unwrap(), 1.0).unwrap(),
            ConvexBody::boxed(vec![0.0, -1.0], vec![2.0, 1.0]).unwrap(),
            0.5,
        )
        .unwrap(),
    );
    check(&s, std::f64::consts::PI / 16.0, 32);
}

#[test]
fn disjoint_supports_have_zero_risk() {
    let s = Scenario::Complete(
        BayesOracleComplete::new(
            ConvexBody::unit_box(2),
            ConvexBody::boxed(vec![2.0, 0.0], vec![3.0, 1.0]).unwrap(),
            0.3,
        )
        .unwrap(),
    );
    let test = s.draw_n(10_000, &mut stream_rng(33, 0)).unwrap();
    let e = conditional_error_on(|x, v| s.bayes(x, v), &s, &test).unwrap();
    assert_eq!(e.estimate, 0.0);
}

#[test]
fn label_dependent_logistic_missingness() {
    // With q0 = 1 - q1 and equal class densities on the overlap x1 in [1/2, 1],
    // both the observed and the unobserved branch lose min(q1, q0), giving
    // 0.1 + 0.3 * (ln 2 - ln(1 + 1/e)).
    let band = |w: f64, b: f64| Propensity::Logistic {
        weights: vec![w, 0.0],
        bias: b,
        lower: 0.2,
        upper: 0.8,
    };
    let s = Scenario::Missing(
        BayesOracleMissing::new(
            ConvexBody::unit_box(3),
            ConvexBody::boxed(vec![0.5, 0.0, 0.0], vec![1.5, 1.0, 1.0]).unwrap(),
            0.5,
            MissingnessMechanism {
                q1: band(4.0, -3.0),
                q0: band(-4.0, 3.0),
            },
            Layout::new(2, 1).unwrap(),
        )
        .unwrap(),
    );
    let want = 0.1 + 0.3 * (2f64.ln() - (1.0 + (-1f64).exp()).ln());
    check(&s, want, 34);
}

#[test]
fn constant_missingness_keeps_the_complete_risk() {
    // Label-independent observation probabilities leave both branches with
    // the same decision rule as complete data.
    let s = Scenario::Missing(
        BayesOracleMissing::new(
            ConvexBody::unit_box(3),
            ConvexBody::boxed(vec![0.5, 0.0, 0.0], vec![1.5, 1.0, 1.0]).unwrap(),
            0.5,
            MissingnessMechanism::constant(0.6, 0.6),
            Layout::new(2, 1).unwrap(),
        )
        .unwrap(),
    );
    check(&s, 0.25, 35);
}
