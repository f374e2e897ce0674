use crate::error::{Error, Result};
use crate::pulses::Pulse;
use crate::state::{DampedGyro, SpinVector, Vec3};

use super::integrate::Trajectory;
use super::rhs::llg_rhs;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Largest relative mismatch between the differentiated trajectory and
    /// the Landau-Lifshitz right-hand side.
    pub max_residual: f64,
    /// Time at which `max_residual` occurs.
    pub worst_time: f64,
    /// Largest change of `|M|` relative to the first sample.
    pub norm_drift: f64,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.norm_drift <= tol
    }
}

/// Derivative at `times[i]` from the Lagrange interpolant through up to five
/// neighbouring samples. On a uniform grid this is the usual five-point
/// stencil in the interior and its one-sided variants at the ends.
pub fn stencil_derivative(times: &[f64], values: &[Vec3], i: usize) -> Vec3 {
    let n = times.len();
    let width = n.min(5);
    let start = i.saturating_sub(width / 2).min(n - width);
    let idx: Vec<usize> = (start..start + width).collect();
    let x = times[i];
    let mut out = Vec3::ZERO;
    for &j in &idx {
        // d/dx of the j-th Lagrange basis polynomial, evaluated at node i
        let weight = if j == i {
            idx.iter().filter(|&&k| k != i).map(|&k| 1.0 / (x - times[k])).sum::<f64>()
        } else {
            let mut w = 1.0 / (times[j] - times[i]);
            for &k in idx.iter().filter(|&&k| k != i && k != j) {
                w *= (x - times[k]) / (times[j] - times[k]);
            }
            w
        };
        out += values[j] * weight;
    }
    out
}

/// Checks a recorded spin trajectory against the LLG equation for the given
/// field and damping, using `|M|` of the first sample as the moment size.
pub fn llg_residual(traj: &Trajectory<SpinVector>, pulse: &Pulse, gyro: &DampedGyro) -> Result<ResidualReport> {
    if traj.len() < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 samples, got {}", traj.len())));
    }
    let m_norm = traj.states[0].norm();
    let mut report = ResidualReport { max_residual: 0.0, worst_time: traj.times[0], norm_drift: 0.0 };
    for (i, (&t, m)) in traj.times.iter().zip(&traj.states).enumerate() {
        let b = pulse.field_at(t)?;
        let numeric = stencil_derivative(&traj.times, &traj.states, i);
        let model = llg_rhs(m, &b, gyro, m_norm);
        let scale = gyro.gamma.abs() * m.norm() * b.norm() + numeric.norm();
        let mismatch = (numeric - model).norm();
        let residual = if scale > 0.0 { mismatch / scale } else { mismatch };
        if residual > report.max_residual || residual.is_nan() {
            report.max_residual = residual;
            report.worst_time = t;
        }
        report.norm_drift = report.norm_drift.max((m.norm() - m_norm).abs());
    }
    Ok(report)
}
