use std::f64::consts::PI;

use crate::closedform::{linear_x_llg, LinearXSolution};
use crate::dynamics::{integrate, EvolutionConfig, Llg};
use crate::error::{Error, Result};
use crate::pulses::Pulse;
use crate::state::{stereographic, DampedGyro, SpinVector, Vec3};

use super::report::{real, KeyValue};

/// Half-width of the integration window in units of the pulse width. The
/// sech envelope has decayed below 1e-8 of its peak there.
pub const SIT_WINDOW: f64 = 20.0;

/// Largest `|x - 2 n pi (1 + alpha^2)|` still reported as resonant.
pub const RESONANCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SitResonance {
    /// Total rotation angle `gamma f` delivered by the pulse.
    pub x_infinity: f64,
    /// Integer `n` for which `2 n pi (1 + alpha^2)` is closest to `x_infinity`.
    pub nearest_n: i64,
    /// `x_infinity - 2 n pi (1 + alpha^2)` for `nearest_n`.
    pub deviation: f64,
    pub resonance_n: Option<i64>,
    /// Whether damping moves the resonance away from `2 n pi`.
    pub shifted: bool,
}

fn classify(x: f64, alpha: f64) -> SitResonance {
    let period = 2.0 * PI * (1.0 + alpha * alpha);
    let n = (x / period).round();
    let deviation = x - n * period;
    let n = n as i64;
    SitResonance {
        x_infinity: x,
        nearest_n: n,
        deviation,
        resonance_n: (deviation.abs() <= RESONANCE_TOL).then_some(n),
        shifted: alpha > 0.0,
    }
}

/// Resonance test for the half pulse that starts at the pulse centre, whose
/// area is `a tau pi / 2`.
pub fn sit_resonance_check(gamma: f64, a: f64, tau: f64, alpha: f64) -> Result<SitResonance> {
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
    }
    if !(alpha >= 0.0) || ![gamma, a, alpha].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter("gamma, a and alpha must be finite with alpha >= 0".into()));
    }
    Ok(classify(gamma * a * tau * PI / 2.0, alpha))
}

/// State left behind by a resonant pulse acting on the north pole:
/// `M (tanh(alpha x_bar), 0, sech(alpha x_bar))`.
pub fn sit_final_state(alpha: f64, x_bar_inf: f64, m: f64) -> SpinVector {
    let s = alpha * x_bar_inf;
    Vec3::new(m * s.tanh(), 0.0, m / s.cosh())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SitReport {
    pub x_infinity: f64,
    pub nearest_n: i64,
    pub deviation: f64,
    pub resonance_n: Option<i64>,
    pub shifted: bool,
    pub final_state: SpinVector,
    pub recovery_error: f64,
    /// Closed-form final state, absent when the initial state sits on the
    /// fixed point `-x` that the parametrization does not cover.
    pub closed_form: Option<SpinVector>,
    pub closed_form_error: Option<f64>,
    pub norm_drift: f64,
}

impl KeyValue for SitReport {
    fn pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![
            real("x_infinity", self.x_infinity),
            ("nearest_n".into(), self.nearest_n.to_string()),
            real("deviation", self.deviation),
            ("resonance_n".into(), self.resonance_n.map_or("none".into(), |n| n.to_string())),
            ("shifted".into(), self.shifted.to_string()),
            real("final_mx", self.final_state.x),
            real("final_my", self.final_state.y),
            real("final_mz", self.final_state.z),
            real("recovery_error", self.recovery_error),
        ];
        if let (Some(c), Some(e)) = (self.closed_form, self.closed_form_error) {
            out.extend([
                real("closed_mx", c.x),
                real("closed_my", c.y),
                real("closed_mz", c.z),
                real("closed_form_error", e),
            ]);
        }
        out.push(real("norm_drift", self.norm_drift));
        out
    }
}

/// Integrates the LLG equation through a sech pulse over
/// `[cfg.t_start, cfg.t_end]` and compares with the closed form.
///
/// The pulse and damping in `cfg` are replaced by `pulse` and `gyro`.
pub fn sit_run(pulse: &Pulse, gyro: &DampedGyro, initial: SpinVector, cfg: &EvolutionConfig) -> Result<SitReport> {
    if !matches!(pulse, Pulse::SechX { .. }) {
        return Err(Error::UnsupportedPulse(pulse.name()));
    }
    let m = initial.norm();
    if !(m > 0.0) {
        return Err(Error::InvalidParameter("initial state must be non-zero".into()));
    }
    let cfg = EvolutionConfig { pulse: pulse.clone(), gyro: *gyro, ..cfg.clone() };
    let traj = integrate(&Llg { m_norm: m }, initial, &cfg)?;
    let (_, final_state) = traj.last().expect("trajectory holds the initial state");

    let x = gyro.gamma * pulse.area(cfg.t_start, cfg.t_end)?;
    let res = classify(x, gyro.alpha);

    // closed form with its time origin at t_start
    let closed_form = match stereographic(&initial.to_complex(), m) {
        Ok(xi0) => match LinearXSolution::from_xi0(m, xi0, gyro.gamma, gyro.alpha, pulse.shifted(cfg.t_start)?) {
            Ok(sol) => Some(linear_x_llg(&sol, cfg.t_end - cfg.t_start)?),
            Err(Error::PoleSingularity { .. }) => None,
            Err(e) => return Err(e),
        },
        Err(Error::PoleSingularity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SitReport {
        x_infinity: x,
        nearest_n: res.nearest_n,
        deviation: res.deviation,
        resonance_n: res.resonance_n,
        shifted: res.shifted,
        final_state,
        recovery_error: (final_state - initial).norm(),
        closed_form,
        closed_form_error: closed_form.map(|c| (c - final_state).norm()),
        norm_drift: traj.norm_drift,
    })
}

fn final_my(product: f64, gamma: f64, tau: f64, alpha: f64, dt: f64) -> Result<SpinVector> {
    let pulse = Pulse::sech(product / (gamma * tau), tau, 0.0)?;
    let gyro = DampedGyro::new(gamma, alpha)?;
    let cfg = EvolutionConfig::new(0.0, SIT_WINDOW * tau, dt, gyro, pulse)?;
    let traj = integrate(&Llg { m_norm: 1.0 }, Vec3::new(0.0, 0.0, 1.0), &cfg)?;
    Ok(traj.last().expect("non-empty trajectory").1)
}

/// Numerically locates the `n`-th transparency point in `gamma a tau`.
///
/// Starting from the north pole at the pulse centre, the product is scanned
/// over `[4n - 1, 4n + 1]` in steps of 0.01 with RK4 runs of step `dt`. The
/// transparency point is the sign change of the final `M_y` whose final
/// `M_z` is positive, refined by bisection to 1e-9.
pub fn locate_transparency(n: u32, gamma: f64, tau: f64, alpha: f64, dt: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(gamma > 0.0 && tau > 0.0) {
        return Err(Error::InvalidParameter("gamma and tau must be positive".into()));
    }
    let centre = 4.0 * f64::from(n);
    let steps = 200;
    let grid = |k: usize| centre - 1.0 + 2.0 * k as f64 / steps as f64;
    let mut prev = final_my(grid(0), gamma, tau, alpha, dt)?;
    for k in 1..=steps {
        let (lo, hi) = (grid(k - 1), grid(k));
        let next = final_my(hi, gamma, tau, alpha, dt)?;
        if prev.y * next.y <= 0.0 && prev.z + next.z > 0.0 {
            return bisect(lo, hi, prev.y, |p| Ok(final_my(p, gamma, tau, alpha, dt)?.y));
        }
        prev = next;
    }
    Err(Error::InvalidParameter(format!("no transparency point found in [{}, {}]", centre - 1.0, centre + 1.0)))
}

fn bisect<F: Fn(f64) -> Result<f64>>(mut lo: f64, mut hi: f64, mut f_lo: f64, f: F) -> Result<f64> {
    if f_lo == 0.0 {
        return Ok(lo);
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid * f_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
