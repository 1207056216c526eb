use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use convexclass::cli::{
    cmd_fit, cmd_hull, cmd_predict, cmd_simulate, kernel_from_flags, FitArgs, HullArgs, ModelKind,
    SimulateArgs,
};
use convexclass::geometry::DEFAULT_FALLBACK_RADIUS;
use convexclass::Result;

#[derive(Parser)]
#[command(name = "convexclass", version, about = "Classification on convex sets with and without missing covariates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a consistency or hull-convergence experiment from a config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mc_test_points: Option<usize>,
        #[arg(long)]
        kernel: Option<String>,
        #[arg(long)]
        bandwidth_c: Option<f64>,
        #[arg(long)]
        fallback_radius: Option<f64>,
    },
    /// Fit a plug-in classifier and save it.
    Fit {
        #[arg(long)]
        data: PathBuf,
        /// complete or missing
        #[arg(long, default_value = "complete")]
        kind: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        kernel: Option<String>,
        #[arg(long)]
        bandwidth_c: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_FALLBACK_RADIUS)]
        fallback_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the model.
        #[arg(long)]
        model: PathBuf,
    },
    /// Predict one label per query row.
    Predict {
        #[arg(long)]
        model: PathBuf,
        /// Query file.
        #[arg(long)]
        data: PathBuf,
        /// Write labels here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hull statistics of a point file.
    Hull {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        d: Option<usize>,
        /// Write the hull document here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FALLBACK_RADIUS)]
        fallback_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            seed,
            mc_test_points,
            kernel,
            bandwidth_c,
            fallback_radius,
        } => {
            let res = cmd_simulate(&SimulateArgs {
                config,
                out,
                seed,
                mc_test_points,
                kernel,
                bandwidth_c,
                fallback_radius,
            })?;
            println!("wrote {} rows to {}", res.rows, res.csv.display());
            println!("wrote summary to {}", res.summary.display());
        }
        Command::Fit {
            data,
            kind,
            d,
            s,
            kernel,
            bandwidth_c,
            fallback_radius,
            seed,
            model,
        } => {
            let mut args = FitArgs::new(data, ModelKind::parse(&kind)?, model);
            args.d = d;
            args.s = s;
            args.kernel = kernel_from_flags(kernel.as_deref(), bandwidth_c)?;
            args.fallback_radius = fallback_radius;
            args.seed = seed;
            print!("{}", cmd_fit(&args)?);
        }
        Command::Predict { model, data, out } => match out {
            Some(path) => {
                let mut f = std::fs::File::create(&path)
                    .map_err(|e| convexclass::Error::Io { path: path.clone(), source: e })?;
                cmd_predict(&model, &data, &mut f)?;
            }
            None => {
                cmd_predict(&model, &data, &mut std::io::stdout().lock())?;
            }
        },
        Command::Hull {
            data,
            d,
            out,
            fallback_radius,
            seed,
        } => {
            let mut args = HullArgs::new(data);
            args.d = d;
            args.out = out;
            args.fallback_radius = fallback_radius;
            args.seed = seed;
            print!("{}", cmd_hull(&args)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
