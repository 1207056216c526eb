//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown:
//! `cargo test --test acceptance`.

mod common;

use std::process::Command;
use std::time::Instant;

use convexclass::bodies::ConvexBody;
use convexclass::classify::{BayesOracleComplete, FitOptions, Label};
use convexclass::geometry::{build_hull, contains, distance_to_hull, volume, Point, VolumeEstimate};
use convexclass::harness::{
    consistency_curve, estimate_error, hull_convergence_curve, stream_rng, ErrorReport,
    ExperimentConfig, HullConvergenceConfig, Scenario,
};
use convexclass::missing::{
    fit_missing, gen_missing, kernel_q_hat, BayesOracleMissing, Bandwidth, KernelSpec, Layout,
    MissingnessMechanism, Propensity,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn exact_volume(hull: &convexclass::geometry::HullEstimate) -> VolumeEstimate {
    volume(hull, 1, &mut stream_rng(0, 0)).unwrap()
}

fn two_squares() -> Scenario {
    Scenario::Complete(
        BayesOracleComplete::new(
            ConvexBody::unit_box(2),
            ConvexBody::boxed(vec![0.5, 0.0], vec![1.5, 1.0]).unwrap(),
            0.5,
        )
        .unwrap(),
    )
}

fn missing_scenario() -> Scenario {
    let band = |w: f64, b: f64| Propensity::Logistic {
        weights: vec![w, 0.0],
        bias: b,
        lower: 0.2,
        upper: 0.8,
    };
    Scenario::Missing(
        BayesOracleMissing::new(
            ConvexBody::unit_box(3),
            ConvexBody::boxed(vec![0.5, 0.0, 0.0], vec![1.5, 1.0, 1.0]).unwrap(),
            0.5,
            MissingnessMechanism {
                q1: band(4.0, -3.0),
                q0: band(-4.0, 3.0),
            },
            Layout { d: 2, s: 1 },
        )
        .unwrap(),
    )
}

fn nonincreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.5}")).collect::<Vec<_>>().join(", ")
}

fn oracle_equivalence() -> Outcome {
    let mut rng = stream_rng(101, 0);
    let (mut agree, mut total, mut lp_agree) = (0, 0, 0);
    for set in 0..100 {
        let d = 2 + set % 2;
        let n = rng.random_range(10..=60);
        let pts = common::random_points(&mut rng, n, d);
        let hull = build_hull(&pts, d, 1.0).unwrap();
        let facets = common::facets(&pts);
        for _ in 0..100 {
            let q: Vec<f64> = (0..d).map(|_| rng.random_range(-0.25..1.25)).collect();
            let ours = contains(&hull, &q, 1e-9).unwrap();
            let facet = common::facet_contains(&facets, &q, 1e-9);
            let lp = common::lp_contains(&pts, &q, 1e-9);
            total += 1;
            agree += usize::from(ours == facet);
            lp_agree += usize::from(ours == lp);
        }
    }
    outcome(
        agree == total && lp_agree == total,
        format!("facet agreement {agree}/{total}, LP agreement {lp_agree}/{total}"),
    )
}

fn simplex_volume_3d(v: &[Point]) -> f64 {
    let e: Vec<[f64; 3]> = (1..4).map(|i| [v[i][0] - v[0][0], v[i][1] - v[0][1], v[i][2] - v[0][2]]).collect();
    let det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
        + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
    det.abs() / 6.0
}

fn exact_volumes() -> Outcome {
    let mut rng = stream_rng(102, 0);
    let mut worst2: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(3..=60);
        let pts = common::random_points(&mut rng, n, 2);
        let ours = exact_volume(&build_hull(&pts, 2, 1.0).unwrap());
        let oracle = common::shoelace(&common::monotone_chain(&pts));
        worst2 = worst2.max((ours.value - oracle).abs());
    }
    let mut worst3: f64 = 0.0;
    for i in 0..100 {
        let (pts, truth) = if i % 2 == 0 {
            let lo: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..0.0)).collect();
            let hi: Vec<f64> = (0..3).map(|_| rng.random_range(0.1..2.0)).collect();
            let body = ConvexBody::boxed(lo.clone(), hi.clone()).unwrap();
            let mut pts: Vec<Point> = (0..8)
                .map(|m| Point::new((0..3).map(|k| if m >> k & 1 == 1 { hi[k] } else { lo[k] }).collect()).unwrap())
                .collect();
            for _ in 0..10 {
                pts.push(body.sample_uniform(&mut rng).unwrap());
            }
            (pts, (0..3).map(|k| hi[k] - lo[k]).product::<f64>())
        } else {
            let v = common::random_points(&mut rng, 4, 3);
            let truth = simplex_volume_3d(&v);
            (v, truth)
        };
        let ours = exact_volume(&build_hull(&pts, 3, 1.0).unwrap());
        worst3 = worst3.max((ours.value - truth).abs() / truth.max(1.0));
    }
    outcome(
        worst2 <= 1e-12 && worst3 <= 1e-12,
        format!("max |2D - shoelace| = {worst2:.2e}, max 3D error = {worst3:.2e}"),
    )
}

fn distance_cases() -> Outcome {
    let corners = |d: usize, hi: &[f64]| -> Vec<Point> {
        (0..1usize << d)
            .map(|m| Point::new((0..d).map(|k| if m >> k & 1 == 1 { hi[k] } else { 0.0 }).collect()).unwrap())
            .collect()
    };
    let cube = corners(3, &[1.0, 1.0, 1.0]);
    let square = corners(2, &[1.0, 1.0]);
    let wide = corners(2, &[2.0, 1.0]);
    let tetra: Vec<Point> = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .iter()
        .map(|c| Point::new(c.to_vec()).unwrap())
        .collect();
    let tri: Vec<Point> = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
        .iter()
        .map(|c| Point::new(c.to_vec()).unwrap())
        .collect();
    let s = f64::sqrt;
    let cases: Vec<(&[Point], Vec<f64>, f64)> = vec![
        (&cube, vec![0.5, 0.5, 0.5], 0.0),
        (&cube, vec![0.5, 0.5, 1.5], 0.5),
        (&cube, vec![1.5, 1.5, 0.5], s(0.5)),
        (&cube, vec![2.0, 2.0, 2.0], s(3.0)),
        (&cube, vec![-1.0, 0.5, 0.5], 1.0),
        (&square, vec![2.0, 0.5], 1.0),
        (&square, vec![2.0, 2.0], s(2.0)),
        (&square, vec![0.5, 0.5], 0.0),
        (&square, vec![-0.5, -0.5], s(0.5)),
        (&wide, vec![3.0, 3.0], s(5.0)),
        (&tetra, vec![1.0, 1.0, 1.0], 2.0 / s(3.0)),
        (&tetra, vec![-1.0, -1.0, -1.0], s(3.0)),
        (&tetra, vec![2.0, 0.0, 0.0], 1.0),
        (&tetra, vec![1.0, 1.0, 0.0], s(0.5)),
        (&tetra, vec![0.2, 0.2, 0.2], 0.0),
        (&tetra, vec![0.3, 0.3, -2.0], 2.0),
        (&tri, vec![1.0, 1.0], s(0.5)),
        (&tri, vec![-1.0, -1.0], s(2.0)),
        (&tri, vec![0.2, 0.2], 0.0),
        (&tri, vec![2.0, -1.0], s(2.0)),
        (&tri, vec![0.5, -1.0], 1.0),
    ];
    let mut worst: f64 = 0.0;
    for (pts, x, want) in &cases {
        let hull = build_hull(pts, x.len(), 1.0).unwrap();
        worst = worst.max((distance_to_hull(&hull, x).unwrap() - want).abs());
    }
    outcome(worst <= 1e-6, format!("{} cases, max error {worst:.2e}", cases.len()))
}

fn hull_convergence() -> Outcome {
    let cfg = HullConvergenceConfig::new(ConvexBody::unit_box(2), vec![100, 1000, 10_000], 20, 104);
    let report = hull_convergence_curve(&cfg).unwrap();
    let s = report.summary();
    let h: Vec<f64> = s.iter().map(|r| r.median_hausdorff).collect();
    let d: Vec<f64> = s.iter().map(|r| r.median_symdiff).collect();
    let pass = nonincreasing(&h) && nonincreasing(&d) && h[2] <= 0.08 && d[2] <= 0.02;
    outcome(pass, format!("median hausdorff [{}], median symdiff [{}]", fmt_list(&h), fmt_list(&d)))
}

fn bayes_error_two_squares() -> Outcome {
    let s = two_squares();
    let e = estimate_error(|x, v| s.bayes(x, v), &s, 100_000, &mut stream_rng(105, 0)).unwrap();
    let z = (e.estimate - 0.25) / e.stderr;
    outcome(z.abs() <= 3.0, format!("estimate {:.5}, stderr {:.5}, z = {z:.2}", e.estimate, e.stderr))
}

fn excess_line(report: &ErrorReport) -> (Vec<f64>, String) {
    let excess: Vec<f64> = report.summary().iter().map(|r| r.median_excess).collect();
    let line = format!("L_B = {:.5}, median excess [{}]", report.bayes.estimate, fmt_list(&excess));
    (excess, line)
}

fn complete_curve() -> ExperimentConfig {
    let mut c = ExperimentConfig::new(two_squares(), vec![100, 1000, 5000], 10, 106);
    c.mc_test_points = 50_000;
    c.bayes_test_points = 100_000;
    c
}

fn missing_curve() -> ExperimentConfig {
    let mut c = ExperimentConfig::new(missing_scenario(), vec![500, 2000, 8000], 10, 108);
    c.mc_test_points = 50_000;
    c.bayes_test_points = 100_000;
    c
}

fn consistency(report: &ErrorReport, bound: f64) -> Outcome {
    let (excess, line) = excess_line(report);
    let failed: usize = report.summary().iter().map(|r| r.failed).sum();
    let pass = failed == 0 && nonincreasing(&excess) && *excess.last().unwrap() <= bound;
    outcome(pass, format!("{line}, failed cells {failed}"))
}

fn kernel_calibration() -> Outcome {
    let (n, d) = (2000, 2);
    let maxima: Vec<f64> = (0..10)
        .map(|seed| {
            let mut rng = stream_rng(107 + seed, 0);
            let body = ConvexBody::unit_box(d + 1);
            let complete: Vec<(Point, Label)> =
                (0..n).map(|_| (body.sample_uniform(&mut rng).unwrap(), Label::One)).collect();
            let layout = Layout { d, s: 1 };
            let data = gen_missing(&complete, &MissingnessMechanism::constant(0.7, 0.7), layout, &mut rng).unwrap();
            let kernel = KernelSpec::default();
            let model = fit_missing(&data, layout, kernel, FitOptions::default()).unwrap();
            let h = model.bandwidth;
            let grid: Vec<f64> = (0..10).map(|i| h + (1.0 - 2.0 * h) * i as f64 / 9.0).collect();
            let mut worst: f64 = 0.0;
            for &a in &grid {
                for &b in &grid {
                    worst = worst.max((kernel_q_hat(&model, &[a, b], Label::One).unwrap() - 0.7).abs());
                }
            }
            worst
        })
        .collect();
    let med = convexclass::harness::median(&maxima);
    let h = Bandwidth::Rule { c: 1.0 }.resolve(n, d).unwrap();
    outcome(med <= 0.05, format!("h = {h:.4}, median max |q_hat - 0.7| = {med:.4}"))
}

fn run_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_convexclass")).args(args).output().unwrap()
}

fn determinism() -> Outcome {
    let mut checks = Vec::new();
    let both = |cfg: &ExperimentConfig| {
        let bytes = || {
            let r = consistency_curve(cfg).unwrap();
            let mut csv = Vec::new();
            r.write_csv(&mut csv).unwrap();
            (csv, r.summary_json().unwrap())
        };
        bytes() == bytes()
    };
    let mut small = complete_curve();
    small.sample_sizes = vec![100, 300];
    small.replicates = 3;
    small.mc_test_points = 2000;
    checks.push(("complete curve", both(&small)));
    let mut small = missing_curve();
    small.sample_sizes = vec![200, 400];
    small.replicates = 3;
    small.mc_test_points = 2000;
    checks.push(("missing curve", both(&small)));
    let mut hull_cfg = HullConvergenceConfig::new(ConvexBody::unit_box(4), vec![50, 100], 3, 9);
    hull_cfg.force_empty = true;
    hull_cfg.n_probe = 100;
    hull_cfg.mc_samples = 2000;
    let hull_bytes = || {
        let mut csv = Vec::new();
        let r = hull_convergence_curve(&hull_cfg).unwrap();
        r.write_csv(&mut csv).unwrap();
        (csv, r.summary_json().unwrap())
    };
    checks.push(("hull curve", hull_bytes() == hull_bytes()));

    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let config = "\
seed = 5
sizes = 50, 100
replicates = 2
mc_test_points = 500
bayes_test_points = 1000
output_dir = unused
scenario.kind = missing
scenario.p = 0.4
scenario.d = 2
scenario.s = 1
scenario.c1.type = box
scenario.c1.lower = 0, 0, 0
scenario.c1.upper = 1, 1, 1
scenario.c0.type = ball
scenario.c0.center = 1, 0.5, 0.5
scenario.c0.radius = 0.6
scenario.q1.type = constant
scenario.q1.value = 0.6
scenario.q0.type = constant
scenario.q0.value = 0.3
";
    std::fs::write(p("exp.conf"), config).unwrap();
    let mut simulate_ok = true;
    for out in ["run1", "run2"] {
        simulate_ok &= run_bin(&["simulate", "--config", &p("exp.conf"), "--out", &p(out)]).status.success();
    }
    let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap_or_default();
    checks.push((
        "cli simulate",
        simulate_ok
            && read("run1/consistency.csv") == read("run2/consistency.csv")
            && read("run1/consistency_summary.json") == read("run2/consistency_summary.json"),
    ));

    let mut rng = stream_rng(109, 0);
    let mut data = String::from("x1,x2,v1,y\n");
    for s in missing_scenario().draw_n(300, &mut rng).unwrap() {
        let v = s.v.map_or("NA".to_string(), |v| v[0].to_string());
        data.push_str(&format!("{},{},{v},{}\n", s.x[0], s.x[1], s.y));
    }
    std::fs::write(p("train.csv"), &data).unwrap();
    let mut queries = String::from("x1,x2,v1\n");
    for i in 0..200 {
        let v = if i % 2 == 0 { "NA".to_string() } else { rng.random::<f64>().to_string() };
        queries.push_str(&format!("{},{},{v}\n", rng.random_range(-0.2..1.7), rng.random::<f64>()));
    }
    std::fs::write(p("q.csv"), &queries).unwrap();
    let fit = |m: &str| {
        run_bin(&["fit", "--data", &p("train.csv"), "--kind", "missing", "--d", "2", "--s", "1", "--model", &p(m)])
    };
    let (f1, f2) = (fit("m1.json"), fit("m2.json"));
    checks.push(("cli fit", f1.status.success() && f1.stdout == f2.stdout && read("m1.json") == read("m2.json")));
    let predict = || run_bin(&["predict", "--model", &p("m1.json"), "--data", &p("q.csv")]);
    let (a, b) = (predict(), predict());
    checks.push(("cli predict", a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty()));
    let hull = |out: &str| run_bin(&["hull", "--data", &p("train.csv"), "--d", "2", "--out", &p(out)]);
    let (a, b) = (hull("h1.json"), hull("h2.json"));
    checks.push(("cli hull", a.status.success() && a.stdout == b.stdout && read("h1.json") == read("h2.json")));

    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let detail = if failed.is_empty() {
        format!("{} outputs byte-identical across reruns", checks.len())
    } else {
        format!("differing: {}", failed.join(", "))
    };
    outcome(failed.is_empty(), detail)
}

fn dominance(reports: &[&ErrorReport]) -> Outcome {
    let mut worst = f64::INFINITY;
    let mut cells = 0;
    for r in reports {
        for s in r.summary() {
            cells += 1;
            let margin = (s.median - (r.bayes.estimate - 3.0 * s.combined_stderr)) / s.combined_stderr;
            worst = worst.min(margin);
        }
    }
    outcome(worst >= 0.0, format!("{cells} cells, smallest margin {worst:.2} combined stderr above the bound"))
}

fn main() {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    // Runtime budgets in seconds, where a criterion states one.
    let budget = |id: usize| match id {
        1 => Some(60.0),
        4 => Some(300.0),
        6 => Some(600.0),
        8 => Some(1200.0),
        _ => None,
    };
    let mut run = |id: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let mut o = f();
        let dt = t.elapsed();
        if let Some(limit) = budget(id) {
            if dt.as_secs_f64() > limit {
                o.pass = false;
                o.detail.push_str(&format!(", over the {limit}s budget"));
            }
        }
        println!(
            "criterion {id:>2} {:<4} {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            dt.as_secs_f64()
        );
        results.push((id, o));
    };
    run(1, "geometry oracle equivalence", &mut oracle_equivalence);
    run(2, "exact volume oracle", &mut exact_volumes);
    run(3, "distance oracle", &mut distance_cases);
    run(4, "hull convergence", &mut hull_convergence);
    run(5, "oracle error, two squares", &mut bayes_error_two_squares);
    let mut complete = None;
    run(6, "plug-in consistency, complete data", &mut || {
        let r = consistency_curve(&complete_curve()).unwrap();
        let o = consistency(&r, 0.02);
        complete = Some(r);
        o
    });
    run(7, "kernel regression calibration", &mut kernel_calibration);
    let mut missing = None;
    run(8, "plug-in consistency, missing covariates", &mut || {
        let r = consistency_curve(&missing_curve()).unwrap();
        let o = consistency(&r, 0.03);
        missing = Some(r);
        o
    });
    run(9, "determinism", &mut determinism);
    let (c, m) = (complete.unwrap(), missing.unwrap());
    run(10, "Bayes dominance", &mut || dominance(&[&c, &m]));

    let failed: Vec<usize> = results.iter().filter(|r| !r.1.pass).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
