//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use spinlift::closedform::{precession_llg, xi_precession};
use spinlift::dynamics::{
    gilbert_residual, integrate, llg_rhs, Bloch, DampedDensity, DampedWavefunction, EvolutionConfig, Llg, Riccati,
};
use spinlift::experiments::{
    dynloc_q2_chi, dynloc_q2_numeric, dynloc_q2_numeric_chi, dynloc_secular, dynloc_t_chi, locate_transparency,
    sit_final_state, sit_run,
};
use spinlift::specfun::{bessel_j, bessel_j_real, j0_complex_via_expansion, j0_zero, BesselConfig};
use spinlift::state::{density_to_spin, inverse_stereographic, spin_to_density, stereographic};
use spinlift::{
    bloch_to_llg, bloch_to_llg_with_rate, DampedGyro, LinearXSolution, PrecessionSolution, Pulse, SolutionFamily, Vec3,
    WaveFunction2,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const ALPHAS: [f64; 3] = [0.01, 0.1, 1.0];

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn families() -> Vec<SolutionFamily> {
    let precession = PrecessionSolution::new(1.0, 1.2, 0.3, 1.0, 1.0, 0.0).unwrap();
    let pulse = Pulse::sech(1.5, 1.0, 2.0).unwrap();
    let linear = LinearXSolution::from_angles(1.0, 0.9, 0.4, 1.0, 0.0, pulse).unwrap();
    vec![SolutionFamily::Precession(precession), SolutionFamily::LinearX(linear)]
}

fn transformation_correctness() -> Outcome {
    let h = 1e-5;
    let (mut worst_fd, mut worst_gilbert) = (0.0_f64, 0.0_f64);
    for family in families() {
        let gamma = family.gamma();
        for alpha in ALPHAS {
            let gyro = DampedGyro::new(gamma, alpha).unwrap();
            for t in [0.3, 1.1, 2.5, 4.0] {
                let m = bloch_to_llg(&family, alpha, t).unwrap();
                let b = family.field_at(t).unwrap();
                let fd = (bloch_to_llg(&family, alpha, t + h).unwrap() - bloch_to_llg(&family, alpha, t - h).unwrap())
                    * (0.5 / h);
                let rhs = llg_rhs(&m, &b, &gyro, family.norm());
                let scale = gamma.abs() * m.norm() * b.norm();
                worst_fd = worst_fd.max((fd - rhs).norm() / scale);
                let (m2, rate) = bloch_to_llg_with_rate(&family, alpha, t).unwrap();
                worst_gilbert = worst_gilbert.max(gilbert_residual(&m2, &rate, &b, &gyro, family.norm()));
            }
        }
    }
    check(
        worst_fd <= 1e-6 && worst_gilbert <= 1e-10,
        format!("max relative LL residual {worst_fd:.2e}, max Gilbert residual {worst_gilbert:.2e}"),
    )
}

fn three_representations() -> Outcome {
    let initial = Vec3::from_angles(1.0, 1.0, 0.5);
    let xi0 = stereographic(&initial.to_complex(), 1.0).unwrap();
    let rho0 = spin_to_density(&initial).unwrap();
    let mut worst = 0.0_f64;
    for pulse in [Pulse::constant_z(1.0).unwrap(), Pulse::sech(1.0, 1.0, 3.0).unwrap()] {
        for alpha in ALPHAS {
            let gyro = DampedGyro::new(1.0, alpha).unwrap();
            let cfg = EvolutionConfig::new(0.0, 10.0, 1e-3, gyro, pulse.clone()).unwrap().recording_every(10);
            let vec = integrate(&Llg { m_norm: 1.0 }, initial, &cfg).unwrap();
            let xi = integrate(&Riccati, xi0, &cfg).unwrap();
            let rho = integrate(&DampedDensity, rho0, &cfg).unwrap();
            for ((m, x), r) in vec.states.iter().zip(&xi.states).zip(&rho.states) {
                let from_xi = inverse_stereographic(*x, 1.0);
                let from_rho = density_to_spin(r).unwrap();
                worst = worst.max((*m - from_xi).norm()).max((*m - from_rho).norm());
            }
        }
    }
    check(worst <= 1e-7, format!("max pointwise disagreement {worst:.2e}"))
}

fn purity_and_unitarity() -> Outcome {
    let initial = Vec3::from_angles(1.0, 2.0, -0.4);
    let psi0 = WaveFunction2::from_angles(2.0, -0.4);
    let (mut purity, mut norm) = (0.0_f64, 0.0_f64);
    for pulse in [Pulse::constant_z(1.0).unwrap(), Pulse::sech(1.0, 1.0, 3.0).unwrap()] {
        for alpha in ALPHAS {
            let gyro = DampedGyro::new(1.0, alpha).unwrap();
            let cfg = EvolutionConfig::new(0.0, 10.0, 1e-3, gyro, pulse.clone()).unwrap();
            let rho = integrate(&DampedDensity, spin_to_density(&initial).unwrap(), &cfg).unwrap();
            purity = purity.max(rho.states.iter().map(|r| r.purity_defect()).fold(0.0, f64::max));
            let psi = integrate(&DampedWavefunction, psi0, &cfg).unwrap();
            norm = norm.max(psi.states.iter().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max));
        }
    }
    check(purity <= 1e-8 && norm <= 1e-8, format!("max purity defect {purity:.2e}, max norm drift {norm:.2e}"))
}

fn damped_precession() -> Outcome {
    let alpha = 0.1;
    let sol = PrecessionSolution::new(1.0, FRAC_PI_2, 0.0, 1.0, 1.0, alpha).unwrap();
    let gyro = DampedGyro::new(1.0, alpha).unwrap();
    let pulse = Pulse::constant_z(1.0).unwrap();
    let cfg = EvolutionConfig::new(0.0, 10.0, 1e-3, gyro, pulse.clone()).unwrap();
    let traj = integrate(&Llg { m_norm: 1.0 }, precession_llg(&sol, 0.0), &cfg).unwrap();
    let closed = traj.iter().map(|(t, m)| (*m - precession_llg(&sol, t)).norm()).fold(0.0, f64::max);

    let horizon = 10.0 / (alpha * sol.omega_prime());
    let long = EvolutionConfig::new(0.0, horizon, 1e-2, gyro, pulse).unwrap();
    let (_, end) = integrate(&Llg { m_norm: 1.0 }, precession_llg(&sol, 0.0), &long).unwrap().last().unwrap();
    let settle = (end - Vec3::new(0.0, 0.0, 1.0)).norm();
    check(
        closed <= 1e-8 && settle < 1e-3,
        format!("closed form vs RK4 {closed:.2e}; |M(T) - (0,0,M)| = {settle:.2e} at T = {horizon:.1}"),
    )
}

fn sit_resonance_shift() -> Outcome {
    let alpha = 0.1;
    let target = 4.0 * (1.0 + alpha * alpha);
    let located = locate_transparency(1, 1.0, 1.0, alpha, 1e-2).map_err(|e| e.to_string())?;

    let pulse = Pulse::sech(target, 1.0, 0.0).unwrap();
    let gyro = DampedGyro::new(1.0, alpha).unwrap();
    let cfg = EvolutionConfig::new(0.0, 20.0, 1e-3, gyro, pulse.clone()).unwrap();
    let report = sit_run(&pulse, &gyro, Vec3::new(0.0, 0.0, 1.0), &cfg).map_err(|e| e.to_string())?;
    let expected = sit_final_state(alpha, 2.0 * PI, 1.0);
    let final_error = (report.final_state - expected).norm();
    check(
        (located - target).abs() <= 1e-3 && final_error <= 1e-6,
        format!("transparency at gamma a tau = {located:.6} (expected {target}); final state error {final_error:.2e}"),
    )
}

fn localization_destruction() -> Outcome {
    let chi = j0_zero(1).unwrap();
    let undamped = dynloc_q2_chi(chi, 0.0).unwrap().norm();
    let damped = dynloc_q2_chi(chi, 0.01).unwrap();
    let quadrature = dynloc_q2_numeric_chi(Complex64::new(chi, 0.0) / Complex64::new(1.0, -0.01));
    let expected = Complex64::new(0.0, -0.0124845);
    let rel = (damped - expected).norm() / expected.norm();
    let oracle = (damped - quadrature).norm();
    let e1 = dynloc_secular(1.0, 1.0, chi, 0.01).unwrap().expansion_error;
    let e2 = dynloc_secular(1.0, 1.0, chi, 0.02).unwrap().expansion_error;
    let ratio = e2 / e1;
    check(
        undamped <= 1e-10 && rel <= 0.01 && oracle <= 1e-10 && (7.0..=9.0).contains(&ratio),
        format!(
            "|<q2>(alpha=0)| = {undamped:.1e}; <q2>(0.01) = {:.4e}{:+.7e}i (rel {rel:.1e}, quadrature {oracle:.1e}); \
             expansion ratio {ratio:.3}",
            damped.re, damped.im
        ),
    )
}

/// Plain real-axis J0 series, independent of the crate.
fn j0_oracle(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..120 {
        term *= q / (k as f64 * k as f64);
        sum += term;
    }
    sum
}

fn bessel_layer() -> Outcome {
    let mut zero_err = 0.0_f64;
    let mut min_j1 = f64::INFINITY;
    for k in 1..=5 {
        let (mut lo, mut hi) = ((k as f64 - 0.75) * PI, (k as f64 + 0.25) * PI);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if j0_oracle(lo) * j0_oracle(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let z = j0_zero(k).unwrap();
        zero_err = zero_err.max((z - 0.5 * (lo + hi)).abs());
        min_j1 = min_j1.min(bessel_j_real(1, z).unwrap().abs());
    }

    let mut jacobi_anger = 0.0_f64;
    for chi in [0.5, 1.0, 2.4048255577, 4.0, 7.3] {
        let quad = dynloc_q2_numeric(chi / 2.0, 1.0, 1.0).unwrap();
        jacobi_anger = jacobi_anger.max((quad - bessel_j_real(0, chi).unwrap()).norm());
    }

    let mut addition = 0.0_f64;
    let cfg = BesselConfig::default();
    for (lambda, alpha) in [(2.4048255577, 0.1), (1.0, 1.0), (5.5, 0.05), (8.0, 0.3), (0.7, 0.5)] {
        let direct = bessel_j(0, Complex64::new(lambda, lambda * alpha), &cfg).unwrap();
        addition = addition.max((j0_complex_via_expansion(lambda, alpha, 40).unwrap() - direct).norm());
    }
    check(
        zero_err <= 1e-10 && jacobi_anger <= 1e-10 && addition <= 1e-12 && min_j1 > 0.1,
        format!(
            "zeros {zero_err:.1e}, Jacobi-Anger {jacobi_anger:.1e}, addition theorem {addition:.1e}, min |J1| {min_j1:.4}"
        ),
    )
}

fn t_chi_convergence() -> Outcome {
    let chi = j0_zero(1).unwrap();
    let diff = (dynloc_t_chi(chi, 50).unwrap() - dynloc_t_chi(chi, 100).unwrap()).abs();
    let cfg = BesselConfig::default();
    let j = |k: i32| bessel_j(k, Complex64::new(chi, 0.0), &cfg).unwrap().re;
    let mut sum = 0.0;
    for (m, n) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
        sum += j(n) * j(n - m) * j(m) / f64::from(m * n);
    }
    let brute = -sum;
    let one = dynloc_t_chi(chi, 1).unwrap();
    check(diff < 1e-10 && one == brute, format!("|T50 - T100| = {diff:.1e}; T1 = {one:.12} vs enumeration {brute:.12}"))
}

fn integrator_order() -> Outcome {
    let exact = |t: f64| Vec3::new(t.cos(), t.sin(), 0.0);
    let err = |dt: f64| {
        let cfg =
            EvolutionConfig::new(0.0, 10.0, dt, DampedGyro::undamped(1.0), Pulse::constant_z(1.0).unwrap()).unwrap();
        let traj = integrate(&Bloch, Vec3::new(1.0, 0.0, 0.0), &cfg).unwrap();
        traj.iter().map(|(t, m)| (*m - exact(t)).norm()).fold(0.0, f64::max)
    };
    let (coarse, fine) = (err(0.1), err(0.05));
    let ratio = coarse / fine;
    check((14.0..=18.0).contains(&ratio), format!("errors {coarse:.2e} / {fine:.2e}, ratio {ratio:.2}"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("transformation correctness", transformation_correctness),
        ("three-representation equivalence", three_representations),
        ("purity and unitarity under damping", purity_and_unitarity),
        ("damped precession", damped_precession),
        ("SIT resonance shift", sit_resonance_shift),
        ("localization destruction", localization_destruction),
        ("Bessel layer", bessel_layer),
        ("T(chi) convergence", t_chi_convergence),
        ("integrator order", integrator_order),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL {name} ({detail}) [{secs:.2}s]", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn precession_riccati_matches_closed_form() {
    let sol = PrecessionSolution::new(1.0, 1.0, 0.2, 1.0, 1.0, 0.1).unwrap();
    let gyro = DampedGyro::new(1.0, 0.1).unwrap();
    let cfg = EvolutionConfig::new(0.0, 10.0, 1e-3, gyro, Pulse::constant_z(1.0).unwrap()).unwrap();
    let traj = integrate(&Riccati, xi_precession(&sol, 0.0).unwrap(), &cfg).unwrap();
    for (t, xi) in traj.iter() {
        assert!((xi.0 - xi_precession(&sol, t).unwrap().0).norm() <= 1e-8);
    }
}
