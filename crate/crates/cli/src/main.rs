use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use galpha_cli::render::{render, Format};
use galpha_cli::verify::{blaschke_round_trip, norms_report, verify};
use galpha_cli::{configure_threads, generate::generate, CliError, LoadedSpec, Tolerances, VerifyConfig};
use galpha_core::DiskGrid64;

#[derive(Parser)]
#[command(name = "galpha", version, about = "Construct, analyse and verify members of G(α)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Number of radii in the geometric disk grid
    #[arg(long, default_value_t = DiskGrid64::DEFAULT_RADII)]
    grid_radii: usize,
    /// Angles per circle
    #[arg(long, default_value_t = DiskGrid64::DEFAULT_ANGLES)]
    grid_angles: usize,
    /// Outermost grid radius
    #[arg(long, default_value_t = 1.0 - 1e-4)]
    rmax: f64,
}

#[derive(Args)]
struct ToleranceArgs {
    #[arg(long, default_value_t = Tolerances::default().roundtrip)]
    tol_roundtrip: f64,
    /// Allowed gap between an extremal norm and its sharp value
    #[arg(long, default_value_t = Tolerances::default().norm)]
    tol_norm: f64,
    /// Slack for pointwise inequalities
    #[arg(long, default_value_t = Tolerances::default().pointwise)]
    tol_pointwise: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification battery on a spec
    Verify {
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: ToleranceArgs,
        /// Machine-readable report path (default: beside the spec)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blaschke product -> atoms -> Blaschke product
    Roundtrip {
        spec: PathBuf,
        #[arg(long, default_value_t = Tolerances::default().roundtrip)]
        tol_roundtrip: f64,
    },
    /// Export the image of a circle |z| = radius
    Render {
        spec: PathBuf,
        #[arg(long, default_value_t = 0.99)]
        radius: f64,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a reproducible random atomic spec
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of atoms
        #[arg(short = 'm', long = "atoms", default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pre-Schwarzian and Schwarzian norms against their sharp bounds
    Norms {
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
}

fn config(grid: &GridArgs, tol: &ToleranceArgs) -> Result<VerifyConfig, CliError> {
    let grid = DiskGrid64::geometric(grid.grid_radii, grid.grid_angles, grid.rmax)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let tolerances = Tolerances {
        roundtrip: tol.tol_roundtrip,
        norm: tol.tol_norm,
        pointwise: tol.tol_pointwise,
    };
    Ok(VerifyConfig { tolerances, grid })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.into(),
            source: e,
        }),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
    }
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Verify { spec, grid, tol, out } => {
            let config = config(&grid, &tol)?;
            let loaded = LoadedSpec::load(&spec)?;
            let report = verify(&loaded, &config)?;
            print!("{}", report.to_text());
            let path = out.unwrap_or_else(|| spec.with_extension("report.json"));
            let json = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
            write_output(Some(&path), &json)?;
            Ok(status(report.pass))
        }
        Command::Roundtrip { spec, tol_roundtrip } => {
            let loaded = LoadedSpec::load(&spec)?;
            let phi = loaded
                .blaschke()
                .ok_or_else(|| CliError::Input("roundtrip needs a spec with a blaschke source".into()))?;
            let rt = blaschke_round_trip(loaded.function().alpha(), phi)?;
            println!("degree: {}", rt.degree);
            for a in &rt.atoms {
                println!("atom: theta {} weight {}", a.theta, a.weight);
            }
            println!("max |phi - phi_hat| on |z| <= 0.9: {:e}", rt.pointwise_error);
            println!("max atom parameter error: {:e}", rt.atom_parameter_error);
            let pass = rt.pointwise_error < tol_roundtrip && rt.atom_parameter_error < tol_roundtrip;
            println!("result: {}", if pass { "PASS" } else { "FAIL" });
            Ok(status(pass))
        }
        Command::Render {
            spec,
            radius,
            samples,
            format,
            out,
        } => {
            let loaded = LoadedSpec::load(&spec)?;
            let text = render(&loaded, radius, samples, format)?;
            write_output(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            seed,
            atoms,
            alpha,
            out,
        } => {
            let spec = generate(seed, atoms, alpha)?;
            write_output(out.as_deref(), &spec.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Norms { spec, grid, tol } => {
            let config = config(&grid, &tol)?;
            let report = norms_report(&LoadedSpec::load(&spec)?, &config)?;
            print!("{}", report.to_text());
            Ok(status(report.pass))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("galpha: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
