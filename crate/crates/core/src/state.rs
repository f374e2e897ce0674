//! State types for a two-level system and the maps between them.
//!
//! A pure state can be carried as a real spin vector `M`, a stereographic
//! coordinate `xi = (Mx + i My) / (M + Mz)`, a 2x2 density matrix, or a
//! two-component wavefunction (up to a global phase). The continuation of a
//! Bloch solution to complex gyromagnetic factor produces a complex vector
//! `N`, which is only ever consumed through its stereographic image.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default pole threshold, relative to the vector norm `M`.
pub const EPS_POLE: f64 = 1e-12;

/// Tolerance used to validate Hermiticity, trace and the `|M| <= 1` bound.
pub const STATE_TOL: f64 = 1e-12;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Real 3-vector. Used both for magnetizations and for applied fields.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Magnetization of a two-level system. Its norm is conserved by both the
/// Bloch and the Landau-Lifshitz-Gilbert flows.
pub type SpinVector = Vec3;

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    /// Point on the sphere of radius `norm` at polar angle `theta`, azimuth `phi`.
    pub fn from_angles(norm: f64, theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Vec3::new(norm * st * cp, norm * st * sp, norm * ct)
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_complex(self) -> ComplexSpinVector {
        ComplexSpinVector { x: self.x.into(), y: self.y.into(), z: self.z.into() }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Complex 3-vector `N = M(gamma_bar)`: a Bloch solution evaluated at a
/// complex gyromagnetic factor.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexSpinVector {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl ComplexSpinVector {
    pub const fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        ComplexSpinVector { x, y, z }
    }

    /// `x^2 + y^2 + z^2` without conjugation. Conserved by the complexified
    /// Bloch flow; equals `M^2` for continuations of real solutions.
    pub fn invariant(&self) -> Complex64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn cross_real(&self, b: &Vec3) -> ComplexSpinVector {
        ComplexSpinVector::new(self.y * b.z - self.z * b.y, self.z * b.x - self.x * b.z, self.x * b.y - self.y * b.x)
    }

    pub fn scale(&self, s: Complex64) -> ComplexSpinVector {
        ComplexSpinVector::new(self.x * s, self.y * s, self.z * s)
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.x.norm().max(self.y.norm()).max(self.z.norm())
    }
}

impl Add for ComplexSpinVector {
    type Output = ComplexSpinVector;
    fn add(self, o: ComplexSpinVector) -> ComplexSpinVector {
        ComplexSpinVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for ComplexSpinVector {
    type Output = ComplexSpinVector;
    fn sub(self, o: ComplexSpinVector) -> ComplexSpinVector {
        ComplexSpinVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Gyromagnetic factor together with the Gilbert damping constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedGyro {
    pub gamma: f64,
    pub alpha: f64,
}

impl DampedGyro {
    pub fn new(gamma: f64, alpha: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma must be finite, got {gamma}")));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be finite and non-negative, got {alpha}")));
        }
        Ok(DampedGyro { gamma, alpha })
    }

    pub fn undamped(gamma: f64) -> Self {
        DampedGyro { gamma, alpha: 0.0 }
    }

    /// `1 / (1 - i alpha)`, the factor multiplying gamma under continuation.
    pub fn continuation_factor(&self) -> Complex64 {
        Complex64::new(1.0, self.alpha) / (1.0 + self.alpha * self.alpha)
    }

    /// `gamma / (1 - i alpha)`.
    pub fn gamma_bar(&self) -> Complex64 {
        self.continuation_factor() * self.gamma
    }
}

/// Stereographic coordinate of a state on the (possibly complexified) sphere.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StereoPoint(pub Complex64);

impl StereoPoint {
    pub fn new(re: f64, im: f64) -> Self {
        StereoPoint(Complex64::new(re, im))
    }

    pub fn xi(&self) -> Complex64 {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

impl From<Complex64> for StereoPoint {
    fn from(xi: Complex64) -> Self {
        StereoPoint(xi)
    }
}

/// 2x2 complex matrix in the `(rho11, rho12; rho21, rho22)` layout. Valid
/// density matrices are Hermitian with unit trace.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DensityMatrix2 {
    pub rho11: Complex64,
    pub rho12: Complex64,
    pub rho21: Complex64,
    pub rho22: Complex64,
}

impl DensityMatrix2 {
    pub const fn new(rho11: Complex64, rho12: Complex64, rho21: Complex64, rho22: Complex64) -> Self {
        DensityMatrix2 { rho11, rho12, rho21, rho22 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        DensityMatrix2::new(one, Complex64::default(), Complex64::default(), one)
    }

    /// `(1/2) v . sigma` for a real vector `v`.
    pub fn from_pauli(v: &Vec3) -> Self {
        DensityMatrix2::new(
            Complex64::new(0.5 * v.z, 0.0),
            Complex64::new(0.5 * v.x, -0.5 * v.y),
            Complex64::new(0.5 * v.x, 0.5 * v.y),
            Complex64::new(-0.5 * v.z, 0.0),
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.rho11 + self.rho22
    }

    pub fn matmul(&self, o: &DensityMatrix2) -> DensityMatrix2 {
        DensityMatrix2::new(
            self.rho11 * o.rho11 + self.rho12 * o.rho21,
            self.rho11 * o.rho12 + self.rho12 * o.rho22,
            self.rho21 * o.rho11 + self.rho22 * o.rho21,
            self.rho21 * o.rho12 + self.rho22 * o.rho22,
        )
    }

    /// `[self, o] = self o - o self`.
    pub fn commutator(&self, o: &DensityMatrix2) -> DensityMatrix2 {
        self.matmul(o) - o.matmul(self)
    }

    pub fn scale(&self, s: Complex64) -> DensityMatrix2 {
        DensityMatrix2::new(self.rho11 * s, self.rho12 * s, self.rho21 * s, self.rho22 * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.rho11.norm().max(self.rho12.norm()).max(self.rho21.norm()).max(self.rho22.norm())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.rho21 - self.rho12.conj()).norm().max(self.rho11.im.abs()).max(self.rho22.im.abs())
    }

    /// `max |rho^2 - rho|` over the four entries; zero for pure states.
    pub fn purity_defect(&self) -> f64 {
        (self.matmul(self) - *self).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.rho11.is_finite() && self.rho12.is_finite() && self.rho21.is_finite() && self.rho22.is_finite()
    }

    /// Bloch vector read off without validation: `Mx = rho12 + rho21`,
    /// `My = i (rho12 - rho21)`, `Mz = rho11 - rho22`.
    pub(crate) fn spin_unchecked(&self) -> Vec3 {
        Vec3::new((self.rho12 + self.rho21).re, (I * (self.rho12 - self.rho21)).re, (self.rho11 - self.rho22).re)
    }
}

impl Add for DensityMatrix2 {
    type Output = DensityMatrix2;
    fn add(self, o: DensityMatrix2) -> DensityMatrix2 {
        DensityMatrix2::new(self.rho11 + o.rho11, self.rho12 + o.rho12, self.rho21 + o.rho21, self.rho22 + o.rho22)
    }
}

impl Sub for DensityMatrix2 {
    type Output = DensityMatrix2;
    fn sub(self, o: DensityMatrix2) -> DensityMatrix2 {
        DensityMatrix2::new(self.rho11 - o.rho11, self.rho12 - o.rho12, self.rho21 - o.rho21, self.rho22 - o.rho22)
    }
}

/// Two-component wavefunction `(psi1, psi2)`.
///
/// The map from a density matrix back to a wavefunction is only defined up
/// to a global phase, so the library treats `xi` and `rho` as the canonical
/// state and never reconstructs `psi` from them implicitly.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WaveFunction2 {
    pub psi1: Complex64,
    pub psi2: Complex64,
}

impl WaveFunction2 {
    pub const fn new(psi1: Complex64, psi2: Complex64) -> Self {
        WaveFunction2 { psi1, psi2 }
    }

    /// The unit-norm state with spin direction `(theta, phi)`, i.e.
    /// `(cos(theta/2), e^{i phi} sin(theta/2))`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        WaveFunction2::new(Complex64::new(c, 0.0), Complex64::from_polar(s, phi))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi1.norm_sqr() + self.psi2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.psi1.is_finite() && self.psi2.is_finite()
    }

    /// `rho_ij = psi_i conj(psi_j)`.
    pub fn density(&self) -> DensityMatrix2 {
        DensityMatrix2::new(
            self.psi1 * self.psi1.conj(),
            self.psi1 * self.psi2.conj(),
            self.psi2 * self.psi1.conj(),
            self.psi2 * self.psi2.conj(),
        )
    }

    /// Spin vector of the state; its norm equals `|psi|^2`.
    pub fn spin(&self) -> Vec3 {
        let c = self.psi1 * self.psi2.conj();
        Vec3::new(2.0 * c.re, -2.0 * c.im, self.psi1.norm_sqr() - self.psi2.norm_sqr())
    }
}

/// `xi = (Nx + i Ny) / (M + Nz)` with the default pole threshold.
pub fn stereographic(n: &ComplexSpinVector, m: f64) -> Result<StereoPoint> {
    stereographic_with(n, m, EPS_POLE)
}

/// Stereographic projection with an explicit pole threshold (relative to `m`).
///
/// In the southern half the algebraically equal quotient
/// `(M - Nz) / (Nx - i Ny)` is evaluated instead, which avoids the
/// cancellation in `M + Nz`. The two agree whenever `N . N = M^2`, which is
/// checked before switching.
pub fn stereographic_with(n: &ComplexSpinVector, m: f64, eps_pole: f64) -> Result<StereoPoint> {
    let den = m + n.z;
    if den.norm() <= eps_pole * m.abs() {
        return Err(Error::PoleSingularity { denominator: den.norm() });
    }
    let upper = m - n.z;
    if upper.norm() > den.norm() {
        let lower = n.x - I * n.y;
        let on_sphere = (n.invariant() - m * m).norm() <= 1e-10 * m * m;
        if on_sphere && lower.norm() > eps_pole * m.abs() {
            return Ok(StereoPoint(upper / lower));
        }
    }
    Ok(StereoPoint((n.x + I * n.y) / den))
}

/// Real vector of norm `m` whose stereographic image is `xi`.
///
/// For `|xi| > 1 / EPS_POLE` the south-pole limit `(0, 0, -m)` is returned.
pub fn inverse_stereographic(xi: StereoPoint, m: f64) -> SpinVector {
    let xi = xi.0;
    let r = xi.norm();
    if r > 1.0 / EPS_POLE || !r.is_finite() {
        return Vec3::new(0.0, 0.0, -m);
    }
    let s = r * r;
    let d = 1.0 + s;
    Vec3::new(2.0 * m * xi.re / d, 2.0 * m * xi.im / d, m * (1.0 - s) / d)
}

/// Time derivative of `inverse_stereographic(xi, m)` given `xi` and `d xi / dt`.
pub fn inverse_stereographic_rate(xi: StereoPoint, xi_dot: Complex64, m: f64) -> Vec3 {
    let xi = xi.0;
    let xc = xi.conj();
    let dc = xi_dot.conj();
    let d = xi.norm_sqr() + 1.0;
    let d2 = d * d;
    let x = (xi_dot - xi_dot * xc * xc + dc - dc * xi * xi) / d2;
    let y = -I * (xi_dot + xi_dot * xc * xc - dc - dc * xi * xi) / d2;
    let z = -2.0 * (xi_dot * xc + xi * dc) / d2;
    Vec3::new(m * x.re, m * y.re, m * z.re)
}

/// `rho = (1 + M . sigma) / 2`.
pub fn spin_to_density(m: &SpinVector) -> Result<DensityMatrix2> {
    let norm = m.norm();
    if !(norm <= 1.0 + STATE_TOL) {
        return Err(Error::NotAState { norm });
    }
    let half = Complex64::new(0.5, 0.0);
    let mut rho = DensityMatrix2::from_pauli(m);
    rho.rho11 += half;
    rho.rho22 += half;
    Ok(rho)
}

pub fn density_to_spin(rho: &DensityMatrix2) -> Result<SpinVector> {
    let defect = rho.hermiticity_defect();
    if !(defect <= STATE_TOL) {
        return Err(Error::NotHermitian { defect });
    }
    let trace = rho.trace().re;
    if !((trace - 1.0).abs() <= STATE_TOL) {
        return Err(Error::BadTrace { trace });
    }
    Ok(rho.spin_unchecked())
}

/// `xi = psi2 / psi1`.
pub fn wavefunction_to_xi(psi: &WaveFunction2) -> Result<StereoPoint> {
    let d = psi.psi1.norm();
    if d <= EPS_POLE {
        return Err(Error::PoleSingularity { denominator: d });
    }
    Ok(StereoPoint(psi.psi2 / psi.psi1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn stereographic_examples() {
        let xi = stereographic(&Vec3::new(0.0, 0.0, 1.0).to_complex(), 1.0).unwrap();
        assert_eq!(xi.0, c(0.0, 0.0));
        let xi = stereographic(&Vec3::new(1.0, 0.0, 0.0).to_complex(), 1.0).unwrap();
        assert!(close(xi.0, c(1.0, 0.0), 1e-15));
        let xi = stereographic(&Vec3::new(0.0, 1.0, 0.0).to_complex(), 1.0).unwrap();
        assert!(close(xi.0, c(0.0, 1.0), 1e-15));
    }

    #[test]
    fn stereographic_reports_pole() {
        let err = stereographic(&Vec3::new(0.0, 0.0, -1.0).to_complex(), 1.0).unwrap_err();
        assert!(matches!(err, Error::PoleSingularity { .. }));
        let near = Vec3::new(1e-7, 0.0, -(1.0f64 - 1e-14).sqrt()).to_complex();
        assert!(stereographic(&near, 1.0).is_err());
        // a looser threshold moves the boundary
        let n = Vec3::new(0.0, 0.0, -0.999).to_complex();
        assert!(stereographic_with(&n, 1.0, 1e-2).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_stereographic(StereoPoint::new(0.0, 0.0), 1.0), Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(inverse_stereographic(StereoPoint::new(1.0, 0.0), 1.0), Vec3::new(1.0, 0.0, 0.0));
        let v = inverse_stereographic(StereoPoint::new(0.5, 0.5), 1.0);
        assert!((v - Vec3::new(2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0)).norm() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_saturates_at_south_pole() {
        let v = inverse_stereographic(StereoPoint::new(1e13, 0.0), 2.0);
        assert_eq!(v, Vec3::new(0.0, 0.0, -2.0));
        let v = inverse_stereographic(StereoPoint::new(f64::INFINITY, 0.0), 1.0);
        assert_eq!(v, Vec3::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn density_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let half = c(0.5, 0.0);
        assert_eq!(spin_to_density(&Vec3::new(0.0, 0.0, 1.0)).unwrap(), DensityMatrix2::new(one, zero, zero, zero));
        assert_eq!(spin_to_density(&Vec3::new(1.0, 0.0, 0.0)).unwrap(), DensityMatrix2::new(half, half, half, half));
        assert_eq!(spin_to_density(&Vec3::ZERO).unwrap(), DensityMatrix2::new(half, zero, zero, half));
        assert!(matches!(spin_to_density(&Vec3::new(1.0, 1.0, 0.0)), Err(Error::NotAState { .. })));
    }

    #[test]
    fn spin_from_density_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let half = c(0.5, 0.0);
        assert_eq!(density_to_spin(&DensityMatrix2::new(one, zero, zero, zero)).unwrap(), Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(density_to_spin(&DensityMatrix2::new(half, half, half, half)).unwrap(), Vec3::new(1.0, 0.0, 0.0));
        let rho = DensityMatrix2::new(half, c(0.0, -0.5), c(0.0, 0.5), half);
        assert_eq!(density_to_spin(&rho).unwrap(), Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn density_validation() {
        let half = c(0.5, 0.0);
        let bad_h = DensityMatrix2::new(half, c(0.1, 0.0), c(0.2, 0.0), half);
        assert!(matches!(density_to_spin(&bad_h), Err(Error::NotHermitian { .. })));
        let bad_t = DensityMatrix2::new(half, c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0));
        assert!(matches!(density_to_spin(&bad_t), Err(Error::BadTrace { .. })));
    }

    #[test]
    fn wavefunction_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let xi = |p: WaveFunction2| wavefunction_to_xi(&p).unwrap().0;
        assert_eq!(xi(WaveFunction2::new(c(1.0, 0.0), c(0.0, 0.0))), c(0.0, 0.0));
        assert!(close(xi(WaveFunction2::new(c(s, 0.0), c(s, 0.0))), c(1.0, 0.0), 1e-15));
        assert!(close(xi(WaveFunction2::new(c(s, 0.0), c(0.0, s))), c(0.0, 1.0), 1e-15));
        assert!(matches!(
            wavefunction_to_xi(&WaveFunction2::new(c(0.0, 0.0), c(1.0, 0.0))),
            Err(Error::PoleSingularity { .. })
        ));
    }

    #[test]
    fn gyro_continuation() {
        let g = DampedGyro::new(1.7, 0.3).unwrap();
        let back = g.gamma_bar() * Complex64::new(1.0, -0.3);
        assert!(close(back, c(1.7, 0.0), 1e-15));
        assert_eq!(DampedGyro::new(2.0, 0.0).unwrap().gamma_bar(), c(2.0, 0.0));
        assert!(DampedGyro::new(1.0, -0.1).is_err());
        assert!(DampedGyro::new(f64::NAN, 0.1).is_err());
    }

    #[test]
    fn wavefunction_and_density_agree_on_xi() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let mut psi = WaveFunction2::new(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
            let n = psi.norm();
            psi.psi1 /= n;
            psi.psi2 /= n;
            if psi.psi1.norm() < 1e-3 {
                continue;
            }
            let direct = wavefunction_to_xi(&psi).unwrap().0;
            let m = density_to_spin(&psi.density()).unwrap();
            let via_rho = stereographic(&m.to_complex(), 1.0).unwrap().0;
            assert!((direct - via_rho).norm() <= 1e-12 * direct.norm().max(1.0));
            assert!((psi.spin() - m).norm() < 1e-14);
        }
    }

    #[test]
    fn analytic_rate_matches_finite_difference() {
        let xi = |t: f64| c(0.3 + 0.2 * t, -0.7 + t * t);
        let xi_dot = |t: f64| c(0.2, 2.0 * t);
        let t = 0.4;
        let h = 1e-5;
        let fd = (inverse_stereographic(StereoPoint(xi(t + h)), 1.3)
            - inverse_stereographic(StereoPoint(xi(t - h)), 1.3))
            * (0.5 / h);
        let an = inverse_stereographic_rate(StereoPoint(xi(t)), xi_dot(t), 1.3);
        assert!((fd - an).norm() < 1e-9);
    }

    use std::f64::consts::PI;

    proptest! {
        #[test]
        fn round_trip_through_sphere(logr in -6.0f64..6.0, arg in -PI..PI, m in 0.1f64..10.0) {
            let xi = Complex64::from_polar(10f64.powf(logr), arg);
            let v = inverse_stereographic(StereoPoint(xi), m);
            prop_assert!((v.norm() - m).abs() <= 1e-13 * m);
            let back = stereographic(&v.to_complex(), m).unwrap().0;
            prop_assert!((back - xi).norm() <= 1e-12 * xi.norm());
        }

        #[test]
        fn density_round_trip(theta in 0.0..PI, phi in -PI..PI, r in 0.0f64..1.0) {
            let m = Vec3::from_angles(r, theta, phi);
            let rho = spin_to_density(&m).unwrap();
            let back = density_to_spin(&rho).unwrap();
            prop_assert!((back - m).norm() <= 1e-15);
            let again = spin_to_density(&back).unwrap();
            prop_assert!((again - rho).max_abs() <= 1e-15);
        }
    }
}
