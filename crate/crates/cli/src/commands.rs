use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use spinlift::closedform::{bloch_to_llg, FamilyId};
use spinlift::dynamics::{
    format_value, integrate, llg_residual, read_trajectory, write_csv, write_trajectory, Bloch, DampedDensity,
    DampedWavefunction, EvolutionConfig, Llg, Riccati,
};
use spinlift::experiments::{dynloc_report, sit_run, write_sweep, DynlocParams, KeyValue, SIT_WINDOW};
use spinlift::specfun::j0_zero;
use spinlift::state::{density_to_spin, spin_to_density, stereographic};
use spinlift::{
    DampedGyro, Error, LinearXSolution, PrecessionSolution, Pulse, SolutionFamily, SpinVector, Trajectory, Vec3,
    WaveFunction2,
};

use crate::pulse_spec::parse_pulse;
use crate::scan::Scan;
use crate::{ClosedformArgs, DynlocArgs, GyroArgs, InitialArgs, Model, SimulateArgs, SitArgs, TimeArgs, VerifyArgs};

const UNSTABLE: u8 = 2;
const VERIFY_FAILED: u8 = 3;

pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    let unstable = err.chain().any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::StepTooLarge { .. })));
    if unstable {
        UNSTABLE
    } else {
        1
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create `{}`", p.display()))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Summary lines go to stdout when the CSV goes to a file, otherwise to stderr.
fn summary(to_file: bool, line: &str) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        bail!("--{name} must be finite, got {v}");
    }
    Ok(())
}

fn gyro(args: &GyroArgs) -> Result<DampedGyro> {
    finite("gamma", args.gamma)?;
    finite("alpha", args.alpha)?;
    Ok(DampedGyro::new(args.gamma, args.alpha)?)
}

fn initial(args: &InitialArgs) -> Result<SpinVector> {
    finite("theta0", args.theta0)?;
    finite("phi0", args.phi0)?;
    if !(args.norm > 0.0 && args.norm.is_finite()) {
        bail!("--norm must be positive, got {}", args.norm);
    }
    Ok(Vec3::from_angles(args.norm, args.theta0, args.phi0))
}

fn evolution(time: &TimeArgs, gyro: DampedGyro, pulse: Pulse) -> Result<EvolutionConfig> {
    finite("t0", time.t0)?;
    finite("t1", time.t1)?;
    finite("dt", time.dt)?;
    Ok(EvolutionConfig::new(time.t0, time.t1, time.dt, gyro, pulse)?.recording_every(time.record_every))
}

pub fn simulate(args: &SimulateArgs) -> Result<ExitCode> {
    if args.model == Model::Bloch && args.gyro.alpha != 0.0 {
        bail!("--alpha must be 0 for the undamped bloch model (got {})", args.gyro.alpha);
    }
    if matches!(args.model, Model::Density | Model::Wavefunction) && args.initial.norm != 1.0 {
        bail!("--norm must be 1 for the {:?} model", args.model);
    }
    let pulse = parse_pulse(&args.pulse)?;
    let gyro = gyro(&args.gyro)?;
    let m0 = initial(&args.initial)?;
    let cfg = evolution(&args.time, gyro, pulse)?;
    let mut out = output(&args.out)?;
    let drift = match args.model {
        Model::Bloch => {
            let traj = integrate(&Bloch, m0, &cfg)?;
            write_trajectory(&mut out, &traj)?;
            traj.norm_drift
        }
        Model::Llg => {
            let traj = integrate(&Llg { m_norm: args.initial.norm }, m0, &cfg)?;
            write_trajectory(&mut out, &traj)?;
            traj.norm_drift
        }
        Model::Riccati => {
            let xi0 = stereographic(&m0.to_complex(), args.initial.norm)?;
            let traj = integrate(&Riccati, xi0, &cfg)?;
            write_trajectory(&mut out, &traj)?;
            traj.norm_drift
        }
        Model::Density => {
            let traj = integrate(&DampedDensity, spin_to_density(&m0)?, &cfg)?;
            let spins = traj.states.iter().map(density_to_spin).collect::<spinlift::Result<Vec<_>>>()?;
            write_csv(&mut out, &traj.times, &spins)?;
            traj.norm_drift
        }
        Model::Wavefunction => {
            let psi0 = WaveFunction2::from_angles(args.initial.theta0, args.initial.phi0);
            let traj = integrate(&DampedWavefunction, psi0, &cfg)?;
            write_trajectory(&mut out, &traj)?;
            traj.norm_drift
        }
    };
    out.flush()?;
    summary(args.out.is_some(), &format!("norm_drift={}", format_value(drift)));
    Ok(ExitCode::SUCCESS)
}

pub fn closedform(args: &ClosedformArgs) -> Result<ExitCode> {
    let id: FamilyId = args.family.parse()?;
    let pulse = parse_pulse(&args.pulse)?;
    let gyro = gyro(&args.gyro)?;
    let (theta, phi, m) = (args.initial.theta0, args.initial.phi0, args.initial.norm);
    initial(&args.initial)?;
    let family = match (id, &pulse) {
        (FamilyId::Precession, Pulse::ConstantZ { b0 }) => {
            SolutionFamily::Precession(PrecessionSolution::new(m, theta, phi, gyro.gamma, *b0, 0.0)?)
        }
        (FamilyId::Precession, other) => bail!("the precession family needs a constz pulse, got {}", other.name()),
        (FamilyId::LinearX, p) if p.is_x_polarized() => {
            SolutionFamily::LinearX(LinearXSolution::from_angles(m, theta, phi, gyro.gamma, 0.0, pulse.clone())?)
        }
        (FamilyId::LinearX, other) => bail!("the linear_x family needs an x-polarized pulse, got {}", other.name()),
    };
    // sample on the same grid simulate would record
    let cfg = evolution(&args.time, gyro, pulse)?;
    let steps = cfg.steps();
    let h = (cfg.t_end - cfg.t_start) / steps as f64;
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut gap = 0.0_f64;
    for k in (0..=steps).filter(|&k| k % cfg.record_every == 0 || k == steps) {
        let t = if k == steps { cfg.t_end } else { cfg.t_start + k as f64 * h };
        let lifted = bloch_to_llg(&family, gyro.alpha, t)?;
        gap = gap.max((lifted - family.llg(gyro.alpha, t)?).norm());
        times.push(t);
        states.push(lifted);
    }
    let mut out = output(&args.out)?;
    write_csv(&mut out, &times, &states)?;
    out.flush()?;
    summary(args.out.is_some(), &format!("max_gap_to_direct_formula={}", format_value(gap)));
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let file = File::open(&args.input).with_context(|| format!("cannot open `{}`", args.input.display()))?;
    let traj: Trajectory<SpinVector> =
        read_trajectory(BufReader::new(file)).with_context(|| format!("malformed CSV `{}`", args.input.display()))?;
    let pulse = parse_pulse(&args.pulse)?;
    let gyro = gyro(&args.gyro)?;
    let report = llg_residual(&traj, &pulse, &gyro)?;
    println!("max_residual={}", format_value(report.max_residual));
    println!("worst_time={}", format_value(report.worst_time));
    println!("norm_drift={}", format_value(report.norm_drift));
    if report.passes(args.tol) {
        println!("verdict=pass");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verdict=fail");
        Ok(ExitCode::from(VERIFY_FAILED))
    }
}

struct SitPoint {
    gamma: f64,
    a: f64,
    tau: f64,
    alpha: f64,
}

fn sit_once(args: &SitArgs, p: &SitPoint, initial: SpinVector) -> Result<spinlift::experiments::SitReport> {
    let pulse = Pulse::sech(p.a, p.tau, 0.0)?;
    let gyro = DampedGyro::new(p.gamma, p.alpha)?;
    let start = if args.full_pulse { -args.window * p.tau } else { 0.0 };
    let cfg = EvolutionConfig::new(start, args.window * p.tau, args.dt, gyro, pulse.clone())?;
    Ok(sit_run(&pulse, &gyro, initial, &cfg)?)
}

pub fn sit(args: &SitArgs) -> Result<ExitCode> {
    for (name, v) in [("gamma", args.gamma), ("a", args.a), ("tau", args.tau), ("alpha", args.alpha), ("dt", args.dt)] {
        finite(name, v)?;
    }
    if !(args.window > 0.0) {
        bail!("--window must be positive");
    }
    let initial = initial(&args.initial)?;
    let base = SitPoint { gamma: args.gamma, a: args.a, tau: args.tau, alpha: args.alpha };
    if let Some(spec) = &args.scan {
        let scan = Scan::parse(spec, &["a", "tau", "alpha", "gamma"])?;
        let rows = scan.run(|v| {
            let mut p = SitPoint { ..base };
            match scan.name.as_str() {
                "a" => p.a = v,
                "tau" => p.tau = v,
                "alpha" => p.alpha = v,
                _ => p.gamma = v,
            }
            let r = sit_once(args, &p, initial)?;
            Ok(Complex64::new(r.final_state.x, r.final_state.y))
        })?;
        let mut out = output(&args.out)?;
        write_sweep(&mut out, &rows)?;
        return Ok(ExitCode::SUCCESS);
    }
    let report = sit_once(args, &base, initial)?;
    print!("{}", report.to_key_value());
    if args.window < SIT_WINDOW {
        eprintln!("note: window {} tau is shorter than the default {SIT_WINDOW} tau", args.window);
    }
    Ok(ExitCode::SUCCESS)
}

pub fn dynloc(args: &DynlocArgs) -> Result<ExitCode> {
    for (name, v) in [("alpha", args.alpha), ("epsilon", args.epsilon), ("gamma", args.gamma), ("omega", args.omega)] {
        finite(name, v)?;
    }
    if !(args.omega > 0.0) {
        bail!("--omega must be positive");
    }
    let chi = match (args.chi, args.chi_zero, args.a) {
        (Some(chi), _, _) => chi,
        (_, Some(k), _) => j0_zero(k)?,
        (_, _, Some(a)) => 2.0 * a * args.gamma / args.omega,
        _ => unreachable!("clap requires one drive argument"),
    };
    finite("chi", chi)?;
    let base = DynlocParams {
        chi,
        alpha: args.alpha,
        epsilon: args.epsilon,
        gamma: args.gamma,
        omega: args.omega,
        n_max: args.n_max,
    };
    if let Some(spec) = &args.scan {
        let scan = Scan::parse(spec, &["chi", "alpha", "epsilon", "gamma", "omega"])?;
        let rows = scan.run(|v| {
            let mut p = base;
            match scan.name.as_str() {
                "chi" => p.chi = v,
                "alpha" => p.alpha = v,
                "epsilon" => p.epsilon = v,
                "gamma" => p.gamma = v,
                _ => p.omega = v,
            }
            Ok(dynloc_report(&p)?.secular_omega)
        })?;
        let mut out = output(&args.out)?;
        write_sweep(&mut out, &rows)?;
        return Ok(ExitCode::SUCCESS);
    }
    print!("{}", dynloc_report(&base)?.to_key_value());
    Ok(ExitCode::SUCCESS)
}
