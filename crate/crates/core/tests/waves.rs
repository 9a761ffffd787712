use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaxwave::dispersion::{complex_dispersion_residual, real_dispersion_residual};
use relaxwave::soliton::{eval_complex_q, eval_uz, singular_thetas, tau_pair};
use relaxwave::{alpha_critical, classify, profile, solve_complex_omega, solve_real, ComplexWave, Shape};

#[test]
fn real_dispersion_holds_across_parameter_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5000 {
        let (v, a) = (rng.random_range(-0.99..0.99), rng.random_range(0.0..5.0));
        let w = solve_real(v, a).unwrap();
        assert!(real_dispersion_residual(w.k, w.omega, a).abs() < 1e-12, "v {v} alpha {a}");
        assert!(w.k > 0.0 && w.omega + w.k > 0.0);
    }
}

#[test]
fn singular_count_drops_through_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let v = rng.random_range(0.05..0.95);
        let ac = alpha_critical(v).unwrap();
        let counts: Vec<usize> =
            [0.5 * ac, ac, 1.5 * ac].iter().map(|&a| singular_thetas(&solve_real(v, a).unwrap()).count()).collect();
        assert_eq!(counts, vec![2, 1, 0], "v {v}");
        assert!((solve_real(v, ac).unwrap().singularity_measure() - 1.0).abs() < 1e-9);
        let shapes: Vec<Shape> =
            [0.5 * ac, ac, 1.5 * ac].iter().map(|&a| classify(&solve_real(v, a).unwrap(), 1e-9).unwrap().shape).collect();
        assert_eq!(shapes, vec![Shape::Loop, Shape::Cusp, Shape::Kink]);
    }
}

#[test]
fn tau_functions_reproduce_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let w = solve_real(rng.random_range(-0.9..0.9), rng.random_range(0.0..3.0))
            .unwrap()
            .with_theta0(rng.random_range(-1.0..1.0));
        let tp = tau_pair(&w);
        for i in 0..10 {
            for j in 0..10 {
                let (s, t) = (-3.0 + 0.6 * i as f64, -3.0 + 0.6 * j as f64);
                let (u, z) = eval_uz(&w, s, t);
                assert!((tp.u(s, t) - u).abs() < 1e-12 * u.abs().max(1.0));
                assert!((tp.z(s, t) - z).abs() < 1e-12 * z.abs().max(1.0));
            }
        }
    }
}

#[test]
fn figure_profiles_turning_points() {
    let ac = alpha_critical(0.24).unwrap();
    let expected = [(0.1, 2), (ac, 1), (0.8, 0)];
    for (a, turns) in expected {
        let w = solve_real(0.24, a).unwrap();
        let p = profile(&w, 0.0, -20.0, 20.0, 4001, 0.0).unwrap();
        assert_eq!(p.monotonicity(1e-9).turning_points(), turns, "alpha {a}");
    }
}

#[test]
fn complex_roots_and_real_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let k = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let a = rng.random_range(0.0..2.0);
        for om in solve_complex_omega(k, a) {
            assert!(complex_dispersion_residual(k, om, a).norm() < 1e-12 * k.norm().max(1.0));
        }
    }
    // real k: omega stays real and Q reduces to the real sech pulse
    let cw = ComplexWave::new(Complex64::new(1.2, 0.0), 0.5);
    assert_eq!(cw.omega.im, 0.0);
    assert!(((1.2 - cw.omega.re) * (1.2 + cw.omega.re + 0.5) - 1.0).abs() < 1e-14);
    for s in [-2.0, 0.0, 1.5] {
        let (qr, qi) = eval_complex_q(&cw, s, 0.4);
        assert_eq!(qi, 0.0);
        let th = cw.theta(s, 0.4).re;
        assert!((qr - 4.0 * (1.2 + cw.omega.re) / th.cosh()).abs() < 1e-14);
    }
}
