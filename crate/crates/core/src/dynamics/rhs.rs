use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{DampedGyro, DensityMatrix2, SpinVector, StereoPoint, Vec3, WaveFunction2};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Purity tolerance accepted by [`damped_density_rhs`].
pub const PURITY_TOL: f64 = 1e-8;
/// Norm tolerance accepted by [`damped_wavefunction_rhs`].
pub const NORM_TOL: f64 = 1e-10;

/// `dM/dt = -gamma M x B`.
pub fn bloch_rhs(m: &SpinVector, b: &Vec3, gamma: f64) -> Vec3 {
    m.cross(b) * -gamma
}

/// Landau-Lifshitz form of the LLG equation:
/// `dM/dt = -gamma/(1+a^2) M x B - gamma a / ((1+a^2) |M|) M x (M x B)`.
pub fn llg_rhs(m: &SpinVector, b: &Vec3, gyro: &DampedGyro, m_norm: f64) -> Vec3 {
    let mxb = m.cross(b);
    let mxmxb = m.cross(&mxb);
    let pref = gyro.gamma / (1.0 + gyro.alpha * gyro.alpha);
    mxb * -pref + mxmxb * (-pref * gyro.alpha / m_norm)
}

/// Defect `|dM + gamma M x B - (alpha/|M|) M x dM|` of the implicit Gilbert form.
pub fn gilbert_residual(m: &SpinVector, m_dot: &Vec3, b: &Vec3, gyro: &DampedGyro, m_norm: f64) -> f64 {
    (*m_dot + m.cross(b) * gyro.gamma - m.cross(m_dot) * (gyro.alpha / m_norm)).norm()
}

/// Riccati equation for the stereographic coordinate:
/// `d xi/dt = i gamma / (2 (1 - i a)) (B- xi^2 + 2 Bz xi - B+)`, `B+- = Bx +- i By`.
pub fn riccati_rhs(xi: &StereoPoint, b: &Vec3, gyro: &DampedGyro) -> Complex64 {
    let xi = xi.0;
    let b_plus = Complex64::new(b.x, b.y);
    let b_minus = Complex64::new(b.x, -b.y);
    let pref = I * gyro.gamma / (2.0 * Complex64::new(1.0, -gyro.alpha));
    pref * (b_minus * xi * xi + 2.0 * b.z * xi - b_plus)
}

// -i/2 (v . sigma) psi for a real vector v
fn pauli_apply(v: &Vec3, psi: &WaveFunction2) -> WaveFunction2 {
    let b_plus = Complex64::new(v.x, v.y);
    let b_minus = Complex64::new(v.x, -v.y);
    let h1 = v.z * psi.psi1 + b_minus * psi.psi2;
    let h2 = b_plus * psi.psi1 - v.z * psi.psi2;
    WaveFunction2::new(-0.5 * I * h1, -0.5 * I * h2)
}

/// `d psi/dt = -i (gamma/2) (B . sigma) psi` (units with hbar = 1).
pub fn schrodinger_rhs(psi: &WaveFunction2, b: &Vec3, gamma: f64) -> WaveFunction2 {
    pauli_apply(&(*b * gamma), psi)
}

/// `-i [H, rho]` with `H = (gamma/2) B . sigma`.
pub fn von_neumann_rhs(rho: &DensityMatrix2, b: &Vec3, gamma: f64) -> DensityMatrix2 {
    let h = DensityMatrix2::from_pauli(&(*b * gamma));
    h.commutator(rho).scale(-I)
}

pub(crate) fn damped_density_rhs_unchecked(rho: &DensityMatrix2, b: &Vec3, gyro: &DampedGyro) -> DensityMatrix2 {
    let m_dot = llg_rhs(&rho.spin_unchecked(), b, gyro, 1.0);
    DensityMatrix2::from_pauli(&m_dot)
}

/// Damped von Neumann equation `rho' = -i [H, rho] + i alpha [rho', rho]`,
/// resolved explicitly by passing through the spin vector:
/// `rho' = (1/2) dM . sigma` with `dM` from [`llg_rhs`].
pub fn damped_density_rhs(rho: &DensityMatrix2, b: &Vec3, gyro: &DampedGyro) -> Result<DensityMatrix2> {
    let defect = rho.purity_defect();
    if !(defect <= PURITY_TOL) {
        return Err(Error::NotPure { defect });
    }
    Ok(damped_density_rhs_unchecked(rho, b, gyro))
}

/// Defect of the implicit damped density equation for a candidate `rho_dot`.
pub fn damped_density_defect(rho: &DensityMatrix2, rho_dot: &DensityMatrix2, b: &Vec3, gyro: &DampedGyro) -> f64 {
    let implicit = von_neumann_rhs(rho, b, gyro.gamma) + rho_dot.commutator(rho).scale(I * gyro.alpha);
    (*rho_dot - implicit).max_abs()
}

pub(crate) fn damped_wavefunction_rhs_unchecked(psi: &WaveFunction2, b: &Vec3, gyro: &DampedGyro) -> WaveFunction2 {
    let m_dot = llg_rhs(&psi.spin(), b, gyro, 1.0);
    // gamma B_eff = gamma B - alpha dM
    let effective = *b * gyro.gamma - m_dot * gyro.alpha;
    pauli_apply(&effective, psi)
}

/// Schrodinger equation in the effective field `B - (alpha/gamma) dM/dt`,
/// where `dM/dt` is the LLG rate of the state's own spin vector. The
/// effective field is real, so the norm of `psi` is conserved.
pub fn damped_wavefunction_rhs(psi: &WaveFunction2, b: &Vec3, gyro: &DampedGyro) -> Result<WaveFunction2> {
    let norm = psi.norm();
    if !((norm - 1.0).abs() <= NORM_TOL) {
        return Err(Error::NotNormalized { norm });
    }
    Ok(damped_wavefunction_rhs_unchecked(psi, b, gyro))
}

/// `exp(-i gamma integral_0^t B0(s) ds)`, the phase that restores the
/// trace part `(gamma/2) B0` of the Hamiltonian. The integral uses
/// composite Simpson with 2048 panels.
pub fn gauge_phase<F: Fn(f64) -> f64>(b0: F, gamma: f64, t: f64) -> Complex64 {
    const PANELS: usize = 2048;
    let h = t / PANELS as f64;
    let mut acc = b0(0.0) + b0(t);
    for k in 1..PANELS {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * b0(k as f64 * h);
    }
    gauge_phase_from_area(acc * h / 3.0, gamma)
}

/// `exp(-i gamma area)` for a precomputed `area = integral_0^t B0`.
pub fn gauge_phase_from_area(area: f64, gamma: f64) -> Complex64 {
    Complex64::from_polar(1.0, -gamma * area)
}
