use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperrad::steady::ConvergenceConfig;
use hyperrad::sweep::{
    self, csv_line, figure_preset, parse_config_with_overrides, run_sweep, write_csv_file, SweepRow, CSV_HEADER,
};
use hyperrad::witness::{radiance_witness_with, DEFAULT_CLASS_BAND};
use hyperrad::{Error, SystemParams};

const EXIT_CONFIG: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hyperrad",
    version,
    about = "Radiance witness of two driven atoms in a cavity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point and print it as key=value lines.
    Point(PointArgs),
    /// Run a sweep described by a configuration file.
    Sweep(SweepArgs),
    /// Run one of the built-in figure grids.
    Figure(FigureArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct PointArgs {
    #[arg(long)]
    g: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    eta: f64,
    #[arg(long = "phi-z")]
    phi_z: f64,
    #[arg(long = "delta-a", default_value_t = 0.0)]
    delta_a: f64,
    #[arg(long = "delta-c", default_value_t = 0.0)]
    delta_c: f64,
    #[arg(long = "rel-tol", default_value_t = 1e-6)]
    rel_tol: f64,
    #[arg(long = "max-cutoff", default_value_t = 60)]
    max_cutoff: usize,
    #[arg(long = "class-band", default_value_t = DEFAULT_CLASS_BAND)]
    class_band: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Override a configuration key, e.g. `--set g=2`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    axis1: Option<String>,
    #[arg(long)]
    axis2: Option<String>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long = "phi-z")]
    phi_z: Option<f64>,
    #[arg(long = "delta-a")]
    delta_a: Option<f64>,
    #[arg(long = "delta-c")]
    delta_c: Option<f64>,
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    #[arg(long = "class-band")]
    class_band: Option<f64>,
    #[arg(long = "max-cutoff")]
    max_cutoff: Option<usize>,
}

#[derive(Args)]
struct FigureArgs {
    /// One of fig2a..fig2e, fig3, fig4a, fig4b, fig5.
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Print the preset as a configuration file instead of running it.
    #[arg(long)]
    print_config: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Point(args) => point(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Figure(args) => figure(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, err)) => {
            eprintln!("hyperrad: {err}");
            ExitCode::from(code)
        }
    }
}

type CliResult = Result<(), (u8, Error)>;

fn config_error(err: Error) -> (u8, Error) {
    match err {
        Error::Io { .. } => (EXIT_IO, err),
        _ => (EXIT_CONFIG, err),
    }
}

fn point(args: PointArgs) -> CliResult {
    let mut params = SystemParams::new(args.g, args.gamma, args.eta).with_phi_z(args.phi_z);
    params.delta_a = args.delta_a;
    params.delta_c = args.delta_c;
    let raw_phi = args.phi_z;
    let config = ConvergenceConfig::default()
        .with_rel_tol(args.rel_tol)
        .with_max_cutoff(args.max_cutoff);

    let point = radiance_witness_with(&params, &config, args.class_band).map_err(|e| {
        let code = match e {
            Error::InvalidArgument(_) | Error::Config(_) => EXIT_CONFIG,
            _ => EXIT_CONVERGENCE,
        };
        (code, e)
    })?;

    let row = SweepRow {
        phi_z: raw_phi,
        eta: params.eta,
        g: params.g,
        gamma: params.gamma,
        delta_a: params.delta_a,
        delta_c: params.delta_c,
        outcome: Ok(sweep::RowOutcome {
            cutoff: point.cutoff_used,
            n1: point.n1,
            n2: point.n2,
            r: point.r,
            regime: point.regime,
            g2: point.g2,
            quantumness: point.quantumness,
            semiclassical_intensity: point.semiclassical_intensity(),
            residual: point.residual,
        }),
    };
    let mut out = io::stdout().lock();
    let io_err = |source| {
        (
            EXIT_IO,
            Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            },
        )
    };
    for (key, value) in CSV_HEADER.split(',').zip(csv_line(&row).split(',')) {
        writeln!(out, "{key}={value}").map_err(io_err)?;
    }
    Ok(())
}

fn sweep_cmd(args: SweepArgs) -> CliResult {
    let text = std::fs::read_to_string(&args.config).map_err(|source| {
        (
            EXIT_IO,
            Error::Io {
                path: args.config.clone(),
                source,
            },
        )
    })?;

    let mut overrides = Vec::new();
    for item in &args.set {
        match item.split_once('=') {
            Some((k, v)) => overrides.push((k.trim().to_string(), v.trim().to_string())),
            None => {
                return Err((
                    EXIT_CONFIG,
                    Error::Config(vec![format!("--set expects KEY=VALUE, got '{item}'")]),
                ))
            }
        }
    }
    let flags: [(&str, Option<String>); 11] = [
        ("axis1", args.axis1.clone()),
        ("axis2", args.axis2.clone()),
        ("g", args.g.map(|v| v.to_string())),
        ("gamma", args.gamma.map(|v| v.to_string())),
        ("eta", args.eta.map(|v| v.to_string())),
        ("phi_z", args.phi_z.map(|v| v.to_string())),
        ("delta_a", args.delta_a.map(|v| v.to_string())),
        ("delta_c", args.delta_c.map(|v| v.to_string())),
        ("rel_tol", args.rel_tol.map(|v| v.to_string())),
        ("class_band", args.class_band.map(|v| v.to_string())),
        ("max_cutoff", args.max_cutoff.map(|v| v.to_string())),
    ];
    overrides.extend(flags.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))));

    let spec = parse_config_with_overrides(&text, &overrides).map_err(config_error)?;
    let rows = run_sweep(&spec, args.workers).map_err(config_error)?;
    emit(&rows, args.out.as_deref())
}

fn figure(args: FigureArgs) -> CliResult {
    let spec = figure_preset(&args.name).map_err(config_error)?;
    if args.print_config {
        print!("{}", sweep::render_config(&spec));
        return Ok(());
    }
    let rows = run_sweep(&spec, args.workers).map_err(config_error)?;
    emit(&rows, args.out.as_deref())
}

fn emit(rows: &[SweepRow], out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => write_csv_file(rows, path).map_err(|e| (EXIT_IO, e)),
        None => sweep::emit_csv(rows, io::stdout().lock()).map_err(|source| {
            (
                EXIT_IO,
                Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                },
            )
        }),
    }
}
