use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pulses::Pulse;
use crate::state::{DampedGyro, DensityMatrix2, SpinVector, StereoPoint, Vec3, WaveFunction2};

use super::rhs::{
    bloch_rhs, damped_density_rhs_unchecked, damped_wavefunction_rhs_unchecked, llg_rhs, riccati_rhs, schrodinger_rhs,
};

/// Drift above which [`integrate`] reports the run as unstable.
pub const MAX_DRIFT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub dt: f64,
    pub gyro: DampedGyro,
    pub pulse: Pulse,
    pub record_every: usize,
}

impl EvolutionConfig {
    pub fn new(t_start: f64, t_end: f64, dt: f64, gyro: DampedGyro, pulse: Pulse) -> Result<Self> {
        let cfg = EvolutionConfig { t_start, t_end, dt, gyro, pulse, record_every: 1 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn recording_every(mut self, every: usize) -> Self {
        self.record_every = every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let span = self.t_end - self.t_start;
        if !(self.t_start.is_finite() && self.t_end.is_finite() && span > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "need t_end > t_start, got [{}, {}]",
                self.t_start, self.t_end
            )));
        }
        if !(self.dt > 0.0 && self.dt <= span) {
            return Err(Error::InvalidParameter(format!("dt must lie in (0, {span}], got {}", self.dt)));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter("record_every must be positive".into()));
        }
        Ok(())
    }

    /// Number of RK4 steps. The step is `span / steps`, which equals `dt`
    /// whenever `dt` divides the interval.
    pub fn steps(&self) -> usize {
        ((self.t_end - self.t_start) / self.dt).round().max(1.0) as usize
    }
}

/// Recorded states of one integration run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    /// Largest deviation of the conserved quantity over the recorded states.
    pub norm_drift: f64,
}

impl<S: Copy> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, S)> {
        Some((*self.times.last()?, *self.states.last()?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> + '_ {
        self.times.iter().copied().zip(self.states.iter())
    }

    pub fn map<T, F: FnMut(&S) -> T>(&self, f: F) -> Trajectory<T> {
        Trajectory {
            times: self.times.clone(),
            states: self.states.iter().map(f).collect(),
            norm_drift: self.norm_drift,
        }
    }
}

/// State that can be advanced by an explicit Runge-Kutta step.
pub trait OdeState: Copy {
    /// `self + h k`.
    fn add_scaled(&self, h: f64, k: &Self) -> Self;
    fn is_finite(&self) -> bool;
}

impl OdeState for Vec3 {
    fn add_scaled(&self, h: f64, k: &Self) -> Self {
        *self + *k * h
    }
    fn is_finite(&self) -> bool {
        Vec3::is_finite(self)
    }
}

impl OdeState for StereoPoint {
    fn add_scaled(&self, h: f64, k: &Self) -> Self {
        StereoPoint(self.0 + k.0 * h)
    }
    fn is_finite(&self) -> bool {
        StereoPoint::is_finite(self)
    }
}

impl OdeState for DensityMatrix2 {
    fn add_scaled(&self, h: f64, k: &Self) -> Self {
        *self + k.scale(Complex64::new(h, 0.0))
    }
    fn is_finite(&self) -> bool {
        DensityMatrix2::is_finite(self)
    }
}

impl OdeState for WaveFunction2 {
    fn add_scaled(&self, h: f64, k: &Self) -> Self {
        WaveFunction2::new(self.psi1 + k.psi1 * h, self.psi2 + k.psi2 * h)
    }
    fn is_finite(&self) -> bool {
        WaveFunction2::is_finite(self)
    }
}

/// An equation of motion driven by an applied field.
pub trait Evolution {
    type State: OdeState;

    fn derivative(&self, state: &Self::State, field: &Vec3, gyro: &DampedGyro) -> Self::State;

    /// Deviation of the conserved quantity from its initial value.
    fn drift(&self, initial: &Self::State, state: &Self::State) -> f64;
}

/// Undamped Bloch equation (the damping constant is ignored).
#[derive(Debug, Clone, Copy, Default)]
pub struct Bloch;

/// Landau-Lifshitz form of the LLG equation for a vector of norm `m_norm`.
#[derive(Debug, Clone, Copy)]
pub struct Llg {
    pub m_norm: f64,
}

/// Riccati equation for `xi`. It has no conserved norm, so only finiteness
/// is monitored.
#[derive(Debug, Clone, Copy, Default)]
pub struct Riccati;

/// Damped density-matrix equation; drift is the purity defect.
#[derive(Debug, Clone, Copy, Default)]
pub struct DampedDensity;

/// Damped (nonlinear) Schrodinger equation; drift is the norm change.
#[derive(Debug, Clone, Copy, Default)]
pub struct DampedWavefunction;

/// Linear Schrodinger equation (the damping constant is ignored).
#[derive(Debug, Clone, Copy, Default)]
pub struct Schrodinger;

impl Evolution for Bloch {
    type State = SpinVector;
    fn derivative(&self, m: &SpinVector, b: &Vec3, gyro: &DampedGyro) -> SpinVector {
        bloch_rhs(m, b, gyro.gamma)
    }
    fn drift(&self, initial: &SpinVector, m: &SpinVector) -> f64 {
        (m.norm() - initial.norm()).abs()
    }
}

impl Evolution for Llg {
    type State = SpinVector;
    fn derivative(&self, m: &SpinVector, b: &Vec3, gyro: &DampedGyro) -> SpinVector {
        llg_rhs(m, b, gyro, self.m_norm)
    }
    fn drift(&self, _initial: &SpinVector, m: &SpinVector) -> f64 {
        (m.norm() - self.m_norm).abs()
    }
}

impl Evolution for Riccati {
    type State = StereoPoint;
    fn derivative(&self, xi: &StereoPoint, b: &Vec3, gyro: &DampedGyro) -> StereoPoint {
        StereoPoint(riccati_rhs(xi, b, gyro))
    }
    fn drift(&self, _initial: &StereoPoint, _xi: &StereoPoint) -> f64 {
        0.0
    }
}

impl Evolution for DampedDensity {
    type State = DensityMatrix2;
    fn derivative(&self, rho: &DensityMatrix2, b: &Vec3, gyro: &DampedGyro) -> DensityMatrix2 {
        damped_density_rhs_unchecked(rho, b, gyro)
    }
    fn drift(&self, _initial: &DensityMatrix2, rho: &DensityMatrix2) -> f64 {
        rho.purity_defect()
    }
}

impl Evolution for DampedWavefunction {
    type State = WaveFunction2;
    fn derivative(&self, psi: &WaveFunction2, b: &Vec3, gyro: &DampedGyro) -> WaveFunction2 {
        damped_wavefunction_rhs_unchecked(psi, b, gyro)
    }
    fn drift(&self, initial: &WaveFunction2, psi: &WaveFunction2) -> f64 {
        (psi.norm() - initial.norm()).abs()
    }
}

impl Evolution for Schrodinger {
    type State = WaveFunction2;
    fn derivative(&self, psi: &WaveFunction2, b: &Vec3, gyro: &DampedGyro) -> WaveFunction2 {
        schrodinger_rhs(psi, b, gyro.gamma)
    }
    fn drift(&self, initial: &WaveFunction2, psi: &WaveFunction2) -> f64 {
        (psi.norm() - initial.norm()).abs()
    }
}

/// Classic fixed-step RK4.
///
/// Records the initial state, every `record_every`-th step and the final
/// state. The state is never renormalized; a drift above [`MAX_DRIFT`] or a
/// non-finite state is reported as [`Error::StepTooLarge`].
pub fn integrate<E: Evolution>(model: &E, initial: E::State, cfg: &EvolutionConfig) -> Result<Trajectory<E::State>> {
    cfg.validate()?;
    let steps = cfg.steps();
    let h = (cfg.t_end - cfg.t_start) / steps as f64;
    let field = |t: f64| cfg.pulse.field_at(t);
    let f = |y: &E::State, b: &Vec3| model.derivative(y, b, &cfg.gyro);

    let capacity = steps / cfg.record_every + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    times.push(cfg.t_start);
    states.push(initial);
    let mut drift = model.drift(&initial, &initial);

    let mut y = initial;
    let mut b_left = field(cfg.t_start)?;
    for k in 0..steps {
        let t = cfg.t_start + k as f64 * h;
        let t_next = if k + 1 == steps { cfg.t_end } else { cfg.t_start + (k + 1) as f64 * h };
        let b_mid = field(t + 0.5 * h)?;
        let b_right = field(t_next)?;
        let k1 = f(&y, &b_left);
        let k2 = f(&y.add_scaled(0.5 * h, &k1), &b_mid);
        let k3 = f(&y.add_scaled(0.5 * h, &k2), &b_mid);
        let k4 = f(&y.add_scaled(h, &k3), &b_right);
        y = y.add_scaled(h / 6.0, &k1).add_scaled(h / 3.0, &k2).add_scaled(h / 3.0, &k3).add_scaled(h / 6.0, &k4);
        b_left = b_right;

        if !y.is_finite() {
            return Err(Error::StepTooLarge { drift: f64::INFINITY, limit: MAX_DRIFT });
        }
        if (k + 1) % cfg.record_every == 0 || k + 1 == steps {
            drift = drift.max(model.drift(&initial, &y));
            times.push(t_next);
            states.push(y);
        }
    }
    if !(drift <= MAX_DRIFT) {
        return Err(Error::StepTooLarge { drift, limit: MAX_DRIFT });
    }
    Ok(Trajectory { times, states, norm_drift: drift })
}
