use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use helion::hylleraas::SpinSymmetry;
use helion_cli::commands::{self, Axis};
use helion_cli::config::{RunConfig, StateLabel};
use helion_cli::{Failure, Outcome};

#[derive(Parser)]
#[command(
    name = "helion",
    version,
    about = "Helium-like S states and their spatial entanglement"
)]
struct Cli {
    /// `key = value` file overriding command-line flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "HELION_PRECISION_DIGITS")]
    digits: Option<u32>,
    /// Repeat for more log output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StateArgs {
    /// State label `1sns`.
    #[arg(long, default_value = "1s1s")]
    state: StateLabel,
    #[arg(long, default_value = "singlet", value_parser = parse_spin)]
    spin: SpinSymmetry,
    #[arg(long, default_value_t = 8)]
    omega: u32,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Nuclear charge.
    #[arg(long, default_value_t = 2.0)]
    z: f64,
    /// Refine the exponents by simplex search before the final solve.
    #[arg(long)]
    optimize: bool,
    /// Drop the electron repulsion.
    #[arg(long)]
    no_repulsion: bool,
}

#[derive(Args)]
struct TruncArgs {
    #[arg(long, default_value_t = 40)]
    l_max: u32,
    #[arg(long, default_value_t = 50)]
    la_max: usize,
    /// Laguerre scale; tuned from `2Z/(1+n)` when absent.
    #[arg(long)]
    scale: Option<f64>,
    /// Keep the scale fixed.
    #[arg(long)]
    no_tune: bool,
}

#[derive(Args)]
struct OutArgs {
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Omega,
    LMax,
    LaMax,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one state and write its artifact.
    Solve {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Entropies of a stored state.
    Entropy {
        #[arg(long)]
        artifact: PathBuf,
        #[command(flatten)]
        trunc: TruncArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Convergence table over one truncation parameter.
    Scan {
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Ascending list, e.g. `5,10,15` or `20..50:5`.
        #[arg(long)]
        values: String,
        /// Reuse a stored state for `l-max` and `la-max` scans.
        #[arg(long)]
        artifact: Option<PathBuf>,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        trunc: TruncArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Interaction distances of several stored states.
    Figure {
        /// States as `1sns` or `1sns:spin`, comma separated.
        #[arg(long, default_value = "")]
        states: String,
        /// Directory holding `<state>-<spin>.state` artifacts.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[command(flatten)]
        trunc: TruncArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_spin(s: &str) -> Result<SpinSymmetry, String> {
    s.parse()
}

fn base_config(digits: Option<u32>) -> RunConfig {
    RunConfig {
        digits,
        ..RunConfig::default()
    }
}

fn apply_state(c: &mut RunConfig, s: &StateArgs) {
    c.state = s.state;
    c.spin = s.spin;
    c.omega = s.omega;
    c.alpha = s.alpha;
    c.beta = s.beta;
    c.z = s.z;
    c.optimize = s.optimize;
    if s.no_repulsion {
        c.repulsion = 0.0;
    }
}

fn apply_trunc(c: &mut RunConfig, t: &TruncArgs) {
    c.l_max = t.l_max;
    c.la_max = t.la_max;
    c.scale = t.scale;
    c.tune_scale = !t.no_tune;
}

fn apply_out(c: &mut RunConfig, o: &OutArgs) -> Outcome<()> {
    c.output = o.output.clone();
    c.format = o.format.parse().map_err(Failure::config)?;
    Ok(())
}

fn finish(c: &mut RunConfig, file: &Option<PathBuf>) -> Outcome<()> {
    if let Some(path) = file {
        c.apply_file(path).map_err(Failure::config)?;
    }
    c.validate().map_err(Failure::config)
}

fn run(cli: Cli) -> Outcome<()> {
    let mut c = base_config(cli.digits);
    match &cli.command {
        Command::Solve { state, out } => {
            apply_state(&mut c, state);
            apply_out(&mut c, out)?;
            finish(&mut c, &cli.config)?;
            commands::solve(&c)
        }
        Command::Entropy {
            artifact,
            trunc,
            out,
        } => {
            apply_trunc(&mut c, trunc);
            apply_out(&mut c, out)?;
            finish(&mut c, &cli.config)?;
            commands::entropy(&c, artifact)
        }
        Command::Scan {
            axis,
            values,
            artifact,
            state,
            trunc,
            out,
        } => {
            apply_state(&mut c, state);
            apply_trunc(&mut c, trunc);
            apply_out(&mut c, out)?;
            finish(&mut c, &cli.config)?;
            let values = helion_cli::config::parse_values(values).map_err(Failure::config)?;
            let axis = match axis {
                AxisArg::Omega => Axis::Omega,
                AxisArg::LMax => Axis::LMax,
                AxisArg::LaMax => Axis::LaMax,
            };
            commands::scan(&c, axis, &values, artifact.as_deref())
        }
        Command::Figure {
            states,
            dir,
            trunc,
            out,
        } => {
            apply_trunc(&mut c, trunc);
            apply_out(&mut c, out)?;
            finish(&mut c, &cli.config)?;
            let keys = commands::parse_state_list(states, c.spin).map_err(Failure::config)?;
            commands::figure(&c, &keys, dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
