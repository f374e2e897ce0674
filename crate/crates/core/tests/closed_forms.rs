use num_complex::Complex64;
use proptest::prelude::*;
use spinlift::closedform::{continued_bloch, linear_x_llg, precession_llg, xi_secant};
use spinlift::dynamics::{integrate, llg_rhs, EvolutionConfig, Llg, Riccati};
use spinlift::state::{inverse_stereographic, stereographic};
use spinlift::{bloch_to_llg, DampedGyro, LinearXSolution, PrecessionSolution, Pulse, SolutionFamily, Vec3};

fn precession(theta: f64, phi: f64, gamma: f64, b0: f64) -> SolutionFamily {
    SolutionFamily::Precession(PrecessionSolution::new(1.0, theta, phi, gamma, b0, 0.0).unwrap())
}

fn linear(theta: f64, phi: f64, a: f64, tau: f64) -> SolutionFamily {
    let pulse = Pulse::sech(a, tau, 0.5).unwrap();
    SolutionFamily::LinearX(LinearXSolution::from_angles(1.0, theta, phi, 1.0, 0.0, pulse).unwrap())
}

#[test]
fn finite_difference_error_is_second_order() {
    let fam = linear(1.1, 0.3, 2.0, 1.0);
    let gyro = DampedGyro::new(1.0, 0.1).unwrap();
    let t = 0.9;
    let m = bloch_to_llg(&fam, 0.1, t).unwrap();
    let rhs = llg_rhs(&m, &fam.field_at(t).unwrap(), &gyro, 1.0);
    let err = |h: f64| {
        let fd = (bloch_to_llg(&fam, 0.1, t + h).unwrap() - bloch_to_llg(&fam, 0.1, t - h).unwrap()) * (0.5 / h);
        (fd - rhs).norm()
    };
    let ratio = err(2e-3) / err(1e-3);
    assert!((3.8..=4.2).contains(&ratio), "ratio {ratio}");
}

#[test]
fn zero_damping_returns_the_bloch_solution() {
    for fam in [precession(0.7, 1.0, 1.3, 0.8), linear(2.0, -0.6, 1.0, 2.0)] {
        for t in [0.0, 0.4, 3.0] {
            let bloch = fam.bloch(t).unwrap();
            assert!((bloch_to_llg(&fam, 0.0, t).unwrap() - bloch).norm() < 1e-12);
            // continuity in alpha
            assert!((bloch_to_llg(&fam, 1e-9, t).unwrap() - bloch).norm() < 1e-7);
        }
    }
}

#[test]
fn continued_vector_keeps_its_invariant() {
    // N . N is a polynomial identity in gamma, so it survives continuation
    for fam in [precession(0.7, 1.0, 1.3, 0.8), linear(2.0, -0.6, 1.0, 2.0)] {
        for alpha in [0.01, 0.3, 2.0] {
            let n = continued_bloch(&fam, alpha, 1.7).unwrap();
            assert!((n.invariant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn precession_llg_matches_rk4() {
    for alpha in [0.01, 0.1, 1.0] {
        let sol = PrecessionSolution::new(1.0, 2.5, 0.4, 1.0, 1.0, alpha).unwrap();
        let gyro = DampedGyro::new(1.0, alpha).unwrap();
        let cfg = EvolutionConfig::new(0.0, 10.0, 1e-3, gyro, Pulse::constant_z(1.0).unwrap()).unwrap();
        let traj = integrate(&Llg { m_norm: 1.0 }, precession_llg(&sol, 0.0), &cfg).unwrap();
        for (t, m) in traj.iter() {
            assert!((*m - precession_llg(&sol, t)).norm() <= 1e-8, "alpha {alpha}, t {t}");
        }
    }
}

#[test]
fn mz_rises_monotonically_under_positive_precession() {
    let gyro = DampedGyro::new(1.0, 0.2).unwrap();
    let cfg = EvolutionConfig::new(0.0, 40.0, 1e-2, gyro, Pulse::constant_z(1.0).unwrap()).unwrap();
    let traj = integrate(&Llg { m_norm: 1.0 }, Vec3::from_angles(1.0, 3.0, 0.0), &cfg).unwrap();
    assert!(traj.states.windows(2).all(|w| w[1].z >= w[0].z));
}

#[test]
fn riccati_follows_secant_solution() {
    let pulse = Pulse::sech(1.0, 1.0, 0.0).unwrap();
    let sol = LinearXSolution::from_angles(1.0, 0.8, 0.3, 1.0, 0.2, pulse.clone()).unwrap();
    let gyro = DampedGyro::new(1.0, 0.2).unwrap();
    let cfg = EvolutionConfig::new(0.0, 8.0, 1e-3, gyro, pulse).unwrap();
    let xi0 = xi_secant(&sol, 0.0).unwrap();
    let traj = integrate(&Riccati, xi0, &cfg).unwrap();
    for (t, xi) in traj.iter() {
        let exact = xi_secant(&sol, t).unwrap();
        assert!((xi.0 - exact.0).norm() <= 1e-8);
        assert!((inverse_stereographic(*xi, 1.0) - linear_x_llg(&sol, t).unwrap()).norm() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lifted_solution_stays_on_the_sphere(
        theta in 0.05f64..3.0, phi in -3.0f64..3.0, alpha in 0.0f64..2.0, t in 0.0f64..10.0, x_drive in any::<bool>()
    ) {
        let fam = if x_drive { linear(theta, phi, 1.2, 0.8) } else { precession(theta, phi, 1.0, 1.5) };
        let m = bloch_to_llg(&fam, alpha, t).unwrap();
        prop_assert!((m.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn pipeline_matches_dedicated_formulas(
        theta in 0.05f64..3.0, phi in -3.0f64..3.0, alpha in 0.0f64..2.0, t in 0.0f64..10.0
    ) {
        let fam = precession(theta, phi, 1.0, 1.5);
        let d = (bloch_to_llg(&fam, alpha, t).unwrap() - fam.llg(alpha, t).unwrap()).norm();
        prop_assert!(d <= 1e-10);
        let fam = linear(theta, phi, 1.2, 0.8);
        let d = (bloch_to_llg(&fam, alpha, t).unwrap() - fam.llg(alpha, t).unwrap()).norm();
        prop_assert!(d <= 1e-10);
    }

    #[test]
    fn stereographic_image_of_lift_agrees(theta in 0.05f64..2.5, alpha in 0.0f64..1.0, t in 0.0f64..5.0) {
        let fam = precession(theta, 0.0, 1.0, 1.0);
        let n = continued_bloch(&fam, alpha, t).unwrap();
        let m = bloch_to_llg(&fam, alpha, t).unwrap();
        let a = stereographic(&n, 1.0).unwrap();
        let b = stereographic(&m.to_complex(), 1.0).unwrap();
        prop_assert!((a.0 - b.0).norm() <= 1e-10 * (1.0 + a.0.norm()));
    }
}
