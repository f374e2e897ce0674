//! Analytic solutions of the undamped Bloch equation and their damped
//! counterparts.
//!
//! Every family here is analytic in the gyromagnetic factor. Evaluating it
//! at `gamma / (1 - i alpha)` gives a complex vector `N(t)`; the
//! stereographic image of `N` lifted back to the real sphere solves the
//! Landau-Lifshitz-Gilbert equation with damping `alpha`.
//! [`bloch_to_llg`] runs that pipeline generically, while
//! [`precession_llg`] and [`linear_x_llg`] are the same solutions written
//! out in closed form.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pulses::Pulse;
use crate::state::{
    inverse_stereographic, inverse_stereographic_rate, stereographic, ComplexSpinVector, SpinVector, StereoPoint, Vec3,
    EPS_POLE,
};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn check_norm(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("norm M must be positive, got {m}")))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must be non-negative, got {alpha}")))
    }
}

/// Free precession in the constant field `(0, 0, b0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecessionSolution {
    pub m: f64,
    pub theta0: f64,
    pub phi0: f64,
    pub gamma: f64,
    pub b0: f64,
    pub alpha: f64,
}

impl PrecessionSolution {
    pub fn new(m: f64, theta0: f64, phi0: f64, gamma: f64, b0: f64, alpha: f64) -> Result<Self> {
        check_norm(m)?;
        check_alpha(alpha)?;
        if ![theta0, phi0, gamma, b0].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("precession parameters must be finite".into()));
        }
        Ok(PrecessionSolution { m, theta0, phi0, gamma, b0, alpha })
    }

    /// Precession frequency `gamma * b0`.
    pub fn omega(&self) -> f64 {
        self.gamma * self.b0
    }

    /// Damped frequency `omega / (1 + alpha^2)`.
    pub fn omega_prime(&self) -> f64 {
        self.omega() / (1.0 + self.alpha * self.alpha)
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        PrecessionSolution { alpha, ..self }
    }
}

pub fn precession_bloch(s: &PrecessionSolution, t: f64) -> SpinVector {
    let (st, ct) = s.theta0.sin_cos();
    let (sp, cp) = (s.omega() * t + s.phi0).sin_cos();
    Vec3::new(s.m * st * cp, s.m * st * sp, s.m * ct)
}

/// Damped precession. With `D = cosh(a) + cos(theta0) sinh(a)` and
/// `a = alpha Omega' t`:
/// `M' = M (sin(theta0) cos(Omega' t + phi0) / D, sin(theta0) sin(Omega' t + phi0) / D,
///  (cos(theta0) cosh(a) + sinh(a)) / D)`.
///
/// Numerator and denominator are rescaled by `e^{-|a|}` so the formula stays
/// finite for arbitrarily long times.
pub fn precession_llg(s: &PrecessionSolution, t: f64) -> SpinVector {
    let (st, ct) = s.theta0.sin_cos();
    if st == 0.0 {
        return Vec3::new(0.0, 0.0, s.m * ct);
    }
    let wp = s.omega_prime();
    let a = s.alpha * wp * t;
    let (sp, cp) = (wp * t + s.phi0).sin_cos();
    let e = (-2.0 * a.abs()).exp();
    let h = (-a.abs()).exp();
    let (den, num_z) = if a >= 0.0 {
        ((1.0 + ct) + (1.0 - ct) * e, ct * (1.0 + e) + (1.0 - e))
    } else {
        ((1.0 - ct) + (1.0 + ct) * e, ct * (1.0 + e) - (1.0 - e))
    };
    let transverse = 2.0 * s.m * st * h / den;
    Vec3::new(transverse * cp, transverse * sp, s.m * num_z / den)
}

/// `xi = tan(theta0/2) e^{i(Omega' t + phi0)} e^{-alpha Omega' t}`.
pub fn xi_precession(s: &PrecessionSolution, t: f64) -> Result<StereoPoint> {
    let (st, ct) = s.theta0.sin_cos();
    let den = 1.0 + ct;
    if den <= EPS_POLE {
        return Err(Error::PoleSingularity { denominator: den });
    }
    let wp = s.omega_prime();
    let amp = st / den * (-s.alpha * wp * t).exp();
    Ok(StereoPoint(Complex64::from_polar(amp, wp * t + s.phi0)))
}

/// Bloch solution for an x-polarized drive `(b(t), 0, 0)`.
///
/// Initial data are fixed at `t = 0` through `a = (1 - xi0) / (1 + xi0)`,
/// stored in polar form `a = r e^{iu}`, and the accumulated angle is
/// `x(t) = gamma f(t)` with `f(t)` the pulse area from 0 to `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearXSolution {
    pub m: f64,
    pub r: f64,
    pub u: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub pulse: Pulse,
}

impl LinearXSolution {
    pub fn new(m: f64, a: Complex64, gamma: f64, alpha: f64, pulse: Pulse) -> Result<Self> {
        check_norm(m)?;
        check_alpha(alpha)?;
        if !pulse.is_x_polarized() {
            return Err(Error::UnsupportedPulse(pulse.name()));
        }
        if !(a.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParameter("a and gamma must be finite".into()));
        }
        Ok(LinearXSolution { m, r: a.norm(), u: a.arg(), gamma, alpha, pulse })
    }

    /// Initial direction `(theta0, phi0)` at `t = 0`.
    pub fn from_angles(m: f64, theta0: f64, phi0: f64, gamma: f64, alpha: f64, pulse: Pulse) -> Result<Self> {
        let (s, c) = (0.5 * theta0).sin_cos();
        let w = Complex64::from_polar(s, phi0);
        let den = c + w;
        if den.norm() <= EPS_POLE {
            // xi0 = -1: the -x axis is a fixed point not covered by this parametrization
            return Err(Error::PoleSingularity { denominator: den.norm() });
        }
        Self::new(m, (c - w) / den, gamma, alpha, pulse)
    }

    /// Initial stereographic coordinate `xi0` at `t = 0`.
    pub fn from_xi0(m: f64, xi0: StereoPoint, gamma: f64, alpha: f64, pulse: Pulse) -> Result<Self> {
        let den = 1.0 + xi0.0;
        if den.norm() <= EPS_POLE {
            return Err(Error::PoleSingularity { denominator: den.norm() });
        }
        Self::new(m, (1.0 - xi0.0) / den, gamma, alpha, pulse)
    }

    pub fn a(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.u)
    }

    /// `x(t) = gamma f(t)`.
    pub fn rotation(&self, t: f64) -> Result<f64> {
        Ok(self.gamma * self.pulse.area(0.0, t)?)
    }

    /// `x_bar(t) = gamma f(t) / (1 + alpha^2)`.
    pub fn damped_rotation(&self, t: f64) -> Result<f64> {
        Ok(self.rotation(t)? / (1.0 + self.alpha * self.alpha))
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        LinearXSolution { alpha, ..self.clone() }
    }
}

// (M (1 - q^2), -2 M q sin(phase), 2 M q cos(phase)) / (1 + q^2), folded through
// w = 1/q when q > 1 so that neither branch overflows.
fn linear_x_state(m: f64, q: f64, phase: f64) -> SpinVector {
    let (sp, cp) = phase.sin_cos();
    if q <= 1.0 {
        let den = 1.0 + q * q;
        Vec3::new(m * (1.0 - q * q) / den, -2.0 * m * q * sp / den, 2.0 * m * q * cp / den)
    } else {
        let w = 1.0 / q;
        let den = 1.0 + w * w;
        Vec3::new(m * (w * w - 1.0) / den, -2.0 * m * w * sp / den, 2.0 * m * w * cp / den)
    }
}

pub fn linear_x_bloch(s: &LinearXSolution, t: f64) -> Result<SpinVector> {
    let x = s.rotation(t)?;
    Ok(linear_x_state(s.m, s.r, x + s.u))
}

/// Damped x-drive solution. With `E = e^{alpha x_bar}`:
/// `M' = M ((E^2 - r^2), -2 E r sin(x_bar + u), 2 E r cos(x_bar + u)) / (E^2 + r^2)`.
pub fn linear_x_llg(s: &LinearXSolution, t: f64) -> Result<SpinVector> {
    let xb = s.damped_rotation(t)?;
    let q = s.r * (-s.alpha * xb).exp();
    Ok(linear_x_state(s.m, q, xb + s.u))
}

/// `xi = (1 - a e^{i gamma_bar f}) / (1 + a e^{i gamma_bar f})`.
pub fn xi_secant(s: &LinearXSolution, t: f64) -> Result<StereoPoint> {
    let f = s.pulse.area(0.0, t)?;
    let gamma_bar = Complex64::new(s.gamma, 0.0) / Complex64::new(1.0, -s.alpha);
    let w = s.a() * (I * gamma_bar * f).exp();
    let den = 1.0 + w;
    if den.norm() <= EPS_POLE {
        return Err(Error::PoleSingularity { denominator: den.norm() });
    }
    Ok(StereoPoint((1.0 - w) / den))
}

/// Identifier of a catalog family, parsed from `precession` / `linear_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyId {
    Precession,
    LinearX,
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "precession" => Ok(FamilyId::Precession),
            "linear_x" | "linear-x" => Ok(FamilyId::LinearX),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyId::Precession => "precession",
            FamilyId::LinearX => "linear_x",
        })
    }
}

/// A catalog solution of the Bloch equation, analytic in gamma.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionFamily {
    Precession(PrecessionSolution),
    LinearX(LinearXSolution),
}

impl SolutionFamily {
    pub fn id(&self) -> FamilyId {
        match self {
            SolutionFamily::Precession(_) => FamilyId::Precession,
            SolutionFamily::LinearX(_) => FamilyId::LinearX,
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            SolutionFamily::Precession(s) => s.m,
            SolutionFamily::LinearX(s) => s.m,
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            SolutionFamily::Precession(s) => s.gamma,
            SolutionFamily::LinearX(s) => s.gamma,
        }
    }

    /// Applied field `B(t)`.
    pub fn field_at(&self, t: f64) -> Result<Vec3> {
        match self {
            SolutionFamily::Precession(s) => Ok(Vec3::new(0.0, 0.0, s.b0)),
            SolutionFamily::LinearX(s) => s.pulse.field_at(t),
        }
    }

    /// Undamped Bloch solution at real gamma.
    pub fn bloch(&self, t: f64) -> Result<SpinVector> {
        match self {
            SolutionFamily::Precession(s) => Ok(precession_bloch(s, t)),
            SolutionFamily::LinearX(s) => linear_x_bloch(s, t),
        }
    }

    /// Dedicated damped closed form with damping `alpha`.
    pub fn llg(&self, alpha: f64, t: f64) -> Result<SpinVector> {
        match self {
            SolutionFamily::Precession(s) => Ok(precession_llg(&s.with_alpha(alpha), t)),
            SolutionFamily::LinearX(s) => linear_x_llg(&s.with_alpha(alpha), t),
        }
    }

    /// The Bloch solution evaluated at gyromagnetic factor `kappa * gamma`,
    /// together with its analytic time derivative.
    pub fn continued(&self, kappa: Complex64, t: f64) -> Result<(ComplexSpinVector, ComplexSpinVector)> {
        match self {
            SolutionFamily::Precession(s) => {
                let (st, ct) = s.theta0.sin_cos();
                let rate = kappa * s.omega();
                let phase = rate * t + s.phi0;
                let (sn, cs) = (phase.sin(), phase.cos());
                let amp = s.m * st;
                let n = ComplexSpinVector::new(cs * amp, sn * amp, Complex64::new(s.m * ct, 0.0));
                let dn = ComplexSpinVector::new(-sn * rate * amp, cs * rate * amp, Complex64::default());
                Ok((n, dn))
            }
            SolutionFamily::LinearX(s) => {
                let r2 = s.r * s.r;
                let scale = s.m / (1.0 + r2);
                let angle = kappa * s.rotation(t)? + s.u;
                let rate = kappa * (s.gamma * s.pulse.field_at(t)?.x);
                let (sn, cs) = (angle.sin(), angle.cos());
                let n = ComplexSpinVector::new(
                    Complex64::new(scale * (1.0 - r2), 0.0),
                    sn * (-2.0 * s.r * scale),
                    cs * (2.0 * s.r * scale),
                );
                let dn = ComplexSpinVector::new(
                    Complex64::default(),
                    cs * rate * (-2.0 * s.r * scale),
                    sn * rate * (-2.0 * s.r * scale),
                );
                Ok((n, dn))
            }
        }
    }
}

fn continuation_factor(alpha: f64) -> Complex64 {
    Complex64::new(1.0, alpha) / (1.0 + alpha * alpha)
}

/// `N(t) = M(gamma / (1 - i alpha), t)` for the given family.
pub fn continued_bloch(family: &SolutionFamily, alpha: f64, t: f64) -> Result<ComplexSpinVector> {
    check_alpha(alpha)?;
    Ok(family.continued(continuation_factor(alpha), t)?.0)
}

/// Damped solution obtained from the family's Bloch solution by
/// continuation `gamma -> gamma / (1 - i alpha)`, stereographic projection,
/// and reconstruction of a real vector of the same norm.
pub fn bloch_to_llg(family: &SolutionFamily, alpha: f64, t: f64) -> Result<SpinVector> {
    let n = continued_bloch(family, alpha, t)?;
    let m = family.norm();
    Ok(inverse_stereographic(stereographic(&n, m)?, m))
}

/// Like [`bloch_to_llg`], also returning `dM'/dt` obtained analytically
/// through `xi_dot = (dNx + i dNy)/(M + Nz) - (Nx + i Ny) dNz/(M + Nz)^2`.
pub fn bloch_to_llg_with_rate(family: &SolutionFamily, alpha: f64, t: f64) -> Result<(SpinVector, Vec3)> {
    check_alpha(alpha)?;
    let (n, dn) = family.continued(continuation_factor(alpha), t)?;
    let m = family.norm();
    let xi = stereographic(&n, m)?;
    let den = m + n.z;
    let xi_dot = (dn.x + I * dn.y) / den - (n.x + I * n.y) * dn.z / (den * den);
    Ok((inverse_stereographic(xi, m), inverse_stereographic_rate(xi, xi_dot, m)))
}
