//! The fit, save, load, predict cycle on files, as the binary runs it.
//!
//!     cargo run --example file_workflow

use convexclass::cli::{cmd_fit, cmd_hull, cmd_predict, FitArgs, HullArgs, ModelKind};
use convexclass::cli::dataset::write_missing;
use convexclass::bodies::ConvexBody;
use convexclass::harness::{stream_rng, Scenario};
use convexclass::missing::{BayesOracleMissing, Layout, MissingnessMechanism};

fn main() -> convexclass::Result<()> {
    let dir = std::env::temp_dir().join("convexclass_file_workflow");
    std::fs::create_dir_all(&dir).map_err(|e| convexclass::Error::Io { path: dir.clone(), source: e })?;
    let layout = Layout::new(2, 1)?;
    let scenario = Scenario::Missing(BayesOracleMissing::new(
        ConvexBody::unit_box(3),
        ConvexBody::boxed(vec![0.5, 0.0, 0.0], vec![1.5, 1.0, 1.0])?,
        0.5,
        MissingnessMechanism::constant(0.7, 0.4),
        layout,
    )?);
    let data = scenario.draw_n(500, &mut stream_rng(8, 0))?;
    let train = dir.join("train.csv");
    let file = std::fs::File::create(&train).map_err(|e| convexclass::Error::Io { path: train.clone(), source: e })?;
    write_missing(file, &data, layout)?;

    let model = dir.join("model.json");
    let mut args = FitArgs::new(&train, ModelKind::Missing, &model);
    args.d = Some(2);
    args.s = Some(1);
    print!("{}", cmd_fit(&args)?);

    let queries = dir.join("queries.csv");
    std::fs::write(&queries, "x1,x2,v1\n0.2,0.5,0.5\n0.75,0.5,NA\n1.2,0.5,0.3\n")
        .map_err(|e| convexclass::Error::Io { path: queries.clone(), source: e })?;
    let mut labels = Vec::new();
    cmd_predict(&model, &queries, &mut labels)?;
    println!("labels: {}", String::from_utf8_lossy(&labels).split_whitespace().collect::<Vec<_>>().join(" "));

    let mut hull = HullArgs::new(&train);
    hull.d = Some(2);
    print!("{}", cmd_hull(&hull)?);
    println!("files in {}", dir.display());
    Ok(())
}
