use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_j_real, BesselConfig};

use super::report::{complex, real, KeyValue};

/// Quadrature points used by [`dynloc_q2_numeric`].
pub const MIN_QUADRATURE_POINTS: usize = 4096;

/// Truncation used for `T(chi)` when none is given.
pub const DEFAULT_T_CHI_TERMS: usize = 50;

/// Drive strength `chi = 2 a gamma / omega`.
pub fn chi_from_drive(a: f64, gamma: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
    }
    Ok(2.0 * a * gamma / omega)
}

/// `<q^2> = J0(chi / (1 - i alpha))` for the damped drive.
pub fn dynloc_q2(a: f64, gamma: f64, omega: f64, alpha: f64) -> Result<Complex64> {
    dynloc_q2_chi(chi_from_drive(a, gamma, omega)?, alpha)
}

/// [`dynloc_q2`] in terms of `chi`, evaluated as `J0(lambda (1 + i alpha))`
/// with `lambda = chi / (1 + alpha^2)`.
pub fn dynloc_q2_chi(chi: f64, alpha: f64) -> Result<Complex64> {
    let lambda = chi / (1.0 + alpha * alpha);
    bessel_j(0, Complex64::new(lambda, lambda * alpha), &BesselConfig::default())
}

/// Period average of `q^2 = exp(2 i a gamma sin(omega t) / omega)` by the
/// trapezoidal rule, which is spectrally accurate for periodic integrands.
pub fn dynloc_q2_numeric(a: f64, gamma: f64, omega: f64) -> Result<Complex64> {
    Ok(dynloc_q2_numeric_chi(Complex64::new(chi_from_drive(a, gamma, omega)?, 0.0)))
}

/// `(1 / 2 pi) * integral over one period of exp(i chi sin s) ds` for complex
/// `chi`.
pub fn dynloc_q2_numeric_chi(chi: Complex64) -> Complex64 {
    let n = MIN_QUADRATURE_POINTS;
    let i = Complex64::new(0.0, 1.0);
    let sum: Complex64 = (0..n).map(|k| (i * chi * (2.0 * PI * k as f64 / n as f64).sin()).exp()).sum();
    sum / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularFrequency {
    /// `epsilon gamma <q^2>`.
    pub exact: Complex64,
    /// Second-order expansion in `alpha`.
    pub expansion: Complex64,
    pub expansion_error: f64,
}

/// Off-resonance secular frequency and its small-damping expansion
/// `epsilon gamma [J0 (1 + 3 chi^2 alpha^2 / 4) - i alpha chi J1 + alpha^2 (chi/2)^2 J2]`,
/// whose `J0` term drops out at a zero of `J0`.
pub fn dynloc_secular(epsilon: f64, gamma: f64, chi: f64, alpha: f64) -> Result<SecularFrequency> {
    let scale = epsilon * gamma;
    let exact = dynloc_q2_chi(chi, alpha)? * scale;
    let (j0, j1, j2) = (bessel_j_real(0, chi)?, bessel_j_real(1, chi)?, bessel_j_real(2, chi)?);
    let a2 = alpha * alpha;
    let expansion =
        Complex64::new(j0 * (1.0 + 0.75 * chi * chi * a2) + a2 * 0.25 * chi * chi * j2, -alpha * chi * j1) * scale;
    Ok(SecularFrequency { exact, expansion, expansion_error: (exact - expansion).norm() })
}

/// `T(chi) = -sum_{m != 0} sum_{n != 0} J_n J_{n-m} J_m / (m n)` over
/// `|m|, |n| <= n_max`, with `m` in the outer loop.
pub fn dynloc_t_chi(chi: f64, n_max: usize) -> Result<f64> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let cfg = BesselConfig::default();
    let top = 2 * n_max as i32;
    let j: Vec<f64> =
        (-top..=top).map(|k| bessel_j(k, Complex64::new(chi, 0.0), &cfg).map(|v| v.re)).collect::<Result<_>>()?;
    let at = |k: i32| j[(k + top) as usize];
    let n_max = n_max as i32;
    let mut sum = 0.0;
    for m in (-n_max..=n_max).filter(|&m| m != 0) {
        for n in (-n_max..=n_max).filter(|&n| n != 0) {
            sum += at(n) * at(n - m) * at(m) / f64::from(m * n);
        }
    }
    Ok(-sum)
}

/// Resonant secular frequency `2 gamma^3 epsilon^3 T / omega^2`.
pub fn resonant_secular(gamma: f64, epsilon: f64, omega: f64, t_chi: f64) -> f64 {
    2.0 * gamma.powi(3) * epsilon.powi(3) * t_chi / (omega * omega)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynlocParams {
    pub chi: f64,
    pub alpha: f64,
    pub epsilon: f64,
    pub gamma: f64,
    pub omega: f64,
    pub n_max: usize,
}

impl Default for DynlocParams {
    fn default() -> Self {
        DynlocParams { chi: 0.0, alpha: 0.0, epsilon: 1.0, gamma: 1.0, omega: 1.0, n_max: DEFAULT_T_CHI_TERMS }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynlocReport {
    pub chi: f64,
    pub lambda: f64,
    pub q2_mean: Complex64,
    pub secular_omega: Complex64,
    pub t_chi: f64,
    pub resonant_omega: f64,
    pub expansion_error: f64,
}

impl KeyValue for DynlocReport {
    fn pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![real("chi", self.chi), real("lambda", self.lambda)];
        out.extend(complex("q2_mean", self.q2_mean));
        out.extend(complex("secular_omega", self.secular_omega));
        out.extend([
            real("t_chi", self.t_chi),
            real("resonant_omega", self.resonant_omega),
            real("expansion_error", self.expansion_error),
        ]);
        out
    }
}

pub fn dynloc_report(p: &DynlocParams) -> Result<DynlocReport> {
    if !(p.omega > 0.0) || !(p.alpha >= 0.0) {
        return Err(Error::InvalidParameter("need omega > 0 and alpha >= 0".into()));
    }
    let secular = dynloc_secular(p.epsilon, p.gamma, p.chi, p.alpha)?;
    let t_chi = dynloc_t_chi(p.chi, p.n_max)?;
    Ok(DynlocReport {
        chi: p.chi,
        lambda: p.chi / (1.0 + p.alpha * p.alpha),
        q2_mean: dynloc_q2_chi(p.chi, p.alpha)?,
        secular_omega: secular.exact,
        t_chi,
        resonant_omega: resonant_secular(p.gamma, p.epsilon, p.omega, t_chi),
        expansion_error: secular.expansion_error,
    })
}
