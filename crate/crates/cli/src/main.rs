//! `spinlift` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 integrator instability,
//! 3 verification failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod pulse_spec;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "spinlift", version, about = "Damped spin dynamics from analytically continued Bloch solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate an equation of motion with fixed-step RK4 and write the trajectory as CSV
    Simulate(SimulateArgs),
    /// Sample a damped closed-form solution obtained from a Bloch solution
    Closedform(ClosedformArgs),
    /// Check a spin trajectory CSV against the LLG equation
    Verify(VerifyArgs),
    /// Damped self-induced transparency through a sech pulse
    Sit(SitArgs),
    /// Damped dynamical localization under a cosine drive
    Dynloc(DynlocArgs),
}

#[derive(Debug, Clone, Copy, Args)]
struct GyroArgs {
    /// Gyromagnetic factor
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Gilbert damping constant (non-negative)
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
}

#[derive(Debug, Clone, Copy, Args)]
struct InitialArgs {
    /// Initial polar angle of the moment
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta0: f64,
    /// Initial azimuthal angle of the moment
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi0: f64,
    /// Length M of the moment
    #[arg(long = "norm", default_value_t = 1.0)]
    norm: f64,
}

#[derive(Debug, Clone, Copy, Args)]
struct TimeArgs {
    /// Start time
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t0: f64,
    /// End time
    #[arg(long, allow_negative_numbers = true)]
    t1: f64,
    /// Time step
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Write every n-th step (the first and last states are always written)
    #[arg(long, default_value_t = 1)]
    record_every: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    /// Undamped Bloch equation; spin CSV
    Bloch,
    /// Landau-Lifshitz-Gilbert equation; spin CSV
    Llg,
    /// Riccati equation for the stereographic variable; xi CSV
    Riccati,
    /// Damped density-matrix equation; written as spin CSV
    Density,
    /// Norm-preserving nonlinear Schrodinger equation; wavefunction CSV
    Wavefunction,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    model: Model,
    /// Applied field: constz:B0 | sech:a=,tau=,t0= | cos:a=,omega=,epsilon= | table:PATH
    #[arg(long)]
    pulse: String,
    #[command(flatten)]
    gyro: GyroArgs,
    #[command(flatten)]
    initial: InitialArgs,
    #[command(flatten)]
    time: TimeArgs,
    /// Output CSV (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClosedformArgs {
    /// Solution family: precession (needs a constz pulse) or linear_x (needs an x-polarized pulse)
    #[arg(long)]
    family: String,
    /// Applied field, same syntax as for simulate
    #[arg(long)]
    pulse: String,
    #[command(flatten)]
    gyro: GyroArgs,
    /// Initial direction at t = 0
    #[command(flatten)]
    initial: InitialArgs,
    #[command(flatten)]
    time: TimeArgs,
    /// Output CSV (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Spin trajectory CSV with header t,Mx,My,Mz
    #[arg(long)]
    input: PathBuf,
    /// Field the trajectory was computed in
    #[arg(long)]
    pulse: String,
    #[command(flatten)]
    gyro: GyroArgs,
    /// Largest accepted relative residual and norm drift
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Debug, Args)]
struct SitArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Peak amplitude of the sech pulse
    #[arg(long)]
    a: f64,
    /// Width of the sech pulse
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[command(flatten)]
    initial: InitialArgs,
    /// Integrate over [-window, window] tau instead of starting at the pulse centre
    #[arg(long)]
    full_pulse: bool,
    /// Window length in units of tau
    #[arg(long, default_value_t = 20.0)]
    window: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Sweep one of a, tau, alpha, gamma as NAME=FROM:TO:COUNT; writes final Mx + i My per point
    #[arg(long)]
    scan: Option<String>,
    /// Scan CSV output (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("drive").required(true).args(["chi", "chi_zero", "a"])))]
struct DynlocArgs {
    /// Drive strength chi = 2 a gamma / omega
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<f64>,
    /// Use the k-th positive zero of J0 as chi
    #[arg(long)]
    chi_zero: Option<usize>,
    /// Drive amplitude; chi is then computed from a, gamma and omega
    #[arg(long)]
    a: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Static field
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Drive frequency
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Truncation of the T(chi) double sum
    #[arg(long, default_value_t = 50)]
    n_max: usize,
    /// Sweep one of chi, alpha, epsilon, gamma, omega as NAME=FROM:TO:COUNT; writes the secular frequency per point
    #[arg(long)]
    scan: Option<String>,
    /// Scan CSV output (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Simulate(args) => commands::simulate(&args),
        Command::Closedform(args) => commands::closedform(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Sit(args) => commands::sit(&args),
        Command::Dynloc(args) => commands::dynloc(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code_for(&err))
        }
    }
}
