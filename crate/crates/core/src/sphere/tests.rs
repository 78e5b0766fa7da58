use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    SpherePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

fn random_test_function(rng: &mut ChaCha8Rng) -> Function {
    let mut g = || Function::Gaussian {
        center: Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
        width: rng.gen_range(0.4..1.2),
        amplitude: rng.gen_range(-2.0..2.0).into(),
    };
    Function::Sum(vec![g(), g()])
}

#[test]
fn gauss_legendre_integrates_polynomials() {
    let rule = quadrature::gauss_legendre(12);
    let s: f64 = rule.0.iter().zip(rule.1.iter()).map(|(x, w)| w * x.powi(22)).sum();
    assert!((s - 2.0 / 23.0).abs() < 1e-14);
    let total: f64 = rule.1.iter().sum();
    assert!((total - 2.0).abs() < 1e-14);
}

#[test]
fn chart_transition_round_trips() {
    let p = SpherePoint::new(0.3, -2.0);
    let w = p.coordinate(Chart::Inverted).unwrap();
    assert_eq!(SpherePoint::from_coordinate(Chart::Inverted, w).finite().unwrap().re, 0.3 + 0.0 * w.re + (p.finite().unwrap().re - 0.3));
    assert_eq!(SpherePoint::Infinity.coordinate(Chart::Inverted), Some(Complex64::new(0.0, 0.0)));
    assert_eq!(SpherePoint::Infinity.coordinate(Chart::Finite), None);
    let back = SpherePoint::from_coordinate(Chart::Inverted, w).finite().unwrap();
    assert!((back - p.finite().unwrap()).norm() < 1e-15);
}

#[test]
fn green_is_bitwise_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in [SpherePoint::Infinity, SpherePoint::new(0.2, 0.1)] {
        let g = GreenKernel::new(a);
        for _ in 0..10_000 {
            let (x, y) = (random_point(&mut rng), random_point(&mut rng));
            assert_eq!(g.eval(&x, &y).unwrap().to_bits(), g.eval(&y, &x).unwrap().to_bits());
        }
    }
}

#[test]
fn green_agrees_across_charts() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = GreenKernel::new(SpherePoint::new(-0.7, 0.4));
    for _ in 0..1000 {
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        let u = g.eval_in_chart(&x, &y, Chart::Finite).unwrap();
        let v = g.eval_in_chart(&x, &y, Chart::Inverted).unwrap();
        assert!((u - v).abs() <= 1e-10 * u.abs().max(1.0), "{u} vs {v}");
    }
}

#[test]
fn green_at_infinity_is_log_distance() {
    let g = GreenKernel::new(SpherePoint::Infinity);
    let (x, y) = (SpherePoint::new(0.5, 1.0), SpherePoint::new(-2.0, 0.25));
    let expect = (x.finite().unwrap() - y.finite().unwrap()).norm_sqr().ln();
    assert!((g.eval(&x, &y).unwrap() - expect).abs() < 1e-13);
}

#[test]
fn green_rejects_singular_configurations() {
    let a = SpherePoint::new(1.0, 0.0);
    let g = GreenKernel::new(a);
    let x = SpherePoint::new(0.0, 2.0);
    assert!(matches!(g.eval(&x, &x), Err(SphereError::Singular(_))));
    assert!(g.eval(&a, &x).is_err());
    assert!(g.eval(&x, &a).is_err());
}

#[test]
fn green_derivative_matches_finite_differences() {
    let g = GreenKernel::new(SpherePoint::new(0.3, -0.2));
    let x = Complex64::new(0.7, 0.4);
    let y = SpherePoint::new(-1.1, 0.9);
    let h = 1e-6;
    let at = |z: Complex64| g.eval(&SpherePoint::Finite(z), &y).unwrap();
    let gx = (at(x + h) - at(x - h)) / (2.0 * h);
    let gy = (at(x + Complex64::new(0.0, h)) - at(x - Complex64::new(0.0, h))) / (2.0 * h);
    let expect = Complex64::new(gx, -gy) * 0.5;
    assert!((g.dz_first(x, &y) - expect).norm() < 1e-7);
}

#[test]
fn weak_residual_certifies_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..6 {
        let kernel = GreenKernel::new(random_point(&mut rng));
        let phi = random_test_function(&mut rng);
        let y = random_point(&mut rng);
        let r = green_pde_residual(&kernel, &phi, &y, 256).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
    }
}

#[test]
fn constant_test_function_has_zero_residual() {
    let kernel = GreenKernel::new(SpherePoint::new(0.1, 0.2));
    let r = green_pde_residual(&kernel, &Function::Constant(3.0.into()), &SpherePoint::new(1.0, 1.0), 64).unwrap();
    assert_eq!(r.rhs, 0.0);
    assert!(r.residual < 1e-12);
}

#[test]
fn misnormalized_kernel_fails() {
    let kernel = GreenKernel::new(SpherePoint::Infinity).with_scale(2.0);
    let phi = Function::Gaussian { center: Complex64::new(0.5, 0.0), width: 0.7, amplitude: 1.0.into() };
    let r = green_pde_residual(&kernel, &phi, &SpherePoint::new(0.4, 0.1), 128).unwrap();
    assert!(r.residual > 0.1);
    assert!((r.residual - r.rhs.abs()).abs() < 1e-6);
}

#[test]
fn base_point_change_is_harmonic() {
    let (a, b) = (SpherePoint::new(0.4, 0.0), SpherePoint::new(-1.0, 1.5));
    let (ga, gb) = (GreenKernel::new(a), GreenKernel::new(b));
    let phi = Function::Gaussian { center: Complex64::new(0.0, 0.5), width: 0.8, amplitude: 1.5.into() };
    let y = SpherePoint::new(0.9, -0.3);
    let (ra, rb) = (green_pde_residual(&ga, &phi, &y, 256).unwrap(), green_pde_residual(&gb, &phi, &y, 256).unwrap());
    let predicted = (phi.value_at(&b).unwrap() - phi.value_at(&a).unwrap()).re;
    assert!((ra.lhs - rb.lhs - predicted).abs() < 1e-6);
}

#[test]
fn diagonal_singularity_is_integrable() {
    let g = GreenKernel::new(SpherePoint::Infinity);
    let y = Complex64::new(0.2, 0.1);
    let mut prev = f64::INFINITY;
    for r in [1e-1, 1e-2, 1e-3] {
        let mass = diagonal_mass(&g, y, r, 64);
        // |log r²|·πr² dominates; the exact value for a = ∞ is πr²(1 − 2 log r)
        let exact = PI * r * r * (1.0 - 2.0 * f64::ln(r));
        assert!((mass - exact).abs() < 1e-8 * exact.max(1e-12) + 1e-12, "{mass} vs {exact}");
        assert!(mass / (r * r * r.ln().abs()) < 10.0);
        assert!(mass < prev);
        prev = mass;
    }
}

#[test]
fn disk_calibration_integral() {
    let f = |z: Complex64| Complex64::new(z.norm().ln(), 0.0);
    let v = integrate_disk(&f, Complex64::new(0.0, 0.0), 1.0, 32);
    assert!((v.re + PI / 2.0).abs() < 1e-10);
}

#[test]
fn sphere_quadrature_of_closed_forms() {
    // ∫ dx dy/(1+|z|²)² = π
    let f = |z: Complex64| Complex64::new(1.0 / (1.0 + z.norm_sqr()).powi(2), 0.0);
    let v = integrate_sphere(&f, &[], 32, false);
    assert!((v.re - PI).abs() < 1e-12);
    let bump = SmoothForm::Density { center: Complex64::new(0.3, -0.4), width: 0.5, mass: 2.5.into() };
    let g = |z: Complex64| bump.eval(z).density();
    let v = integrate_sphere(&g, &[SpherePoint::new(0.3, 0.0), SpherePoint::Infinity], 64, true);
    assert!((v - 2.5).norm() / 2.5 < 1e-6);
}

#[test]
fn log_singularity_at_infinity() {
    // ∫ log(1+|z|²)/(1+|z|²)² dx dy = π, with the weight singular at ∞ only through log
    let f = |z: Complex64| Complex64::new((1.0 + z.norm_sqr()).ln() / (1.0 + z.norm_sqr()).powi(2), 0.0);
    let v = integrate_sphere(&f, &[SpherePoint::Infinity], 64, true);
    assert!((v.re - PI).abs() < 1e-8, "{v}");
}

#[test]
fn parallel_and_serial_sums_agree_bitwise() {
    let g = GreenKernel::new(SpherePoint::Infinity);
    let y = SpherePoint::new(0.5, 0.5);
    let f = |z: Complex64| Complex64::new(g.eval(&SpherePoint::Finite(z), &y).unwrap_or(0.0) * (-z.norm_sqr()).exp(), 0.0);
    let a = integrate_sphere(&f, &[y], 48, true);
    let b = integrate_sphere(&f, &[y], 48, false);
    assert_eq!(a.re.to_bits(), b.re.to_bits());
}

#[test]
fn adaptive_reports_trace_on_failure() {
    let f = |z: Complex64| Complex64::new(if z.re > 0.0 { 1.0 } else { 0.0 } / (1.0 + z.norm_sqr()).powi(2), 0.0);
    match integrate_adaptive(&f, &[], 8, 32, 1e-15, false) {
        Err(SphereError::Convergence { trace }) => assert_eq!(trace.len(), 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dc_of_log_modulus() {
    let f = SmoothForm::Function(Function::LogModulus { center: Complex64::new(0.0, 0.0) });
    let df = f.dc().unwrap();
    let z = Complex64::new(0.6, -1.3);
    let v = df.eval(z);
    assert!((v.dz - DC_CONSTANT / z).norm() < 1e-14);
    assert!((v.dzb + DC_CONSTANT / z.conj()).norm() < 1e-14);
    assert_eq!(df.degree(), 1);
}

#[test]
fn dc_matches_finite_differences() {
    let f = Function::Gaussian { center: Complex64::new(0.2, 0.1), width: 0.9, amplitude: 1.0.into() };
    let z = Complex64::new(0.5, -0.3);
    let h = 1e-5;
    let v = |w: Complex64| f.jet(w).value.re;
    let fx = (v(z + h) - v(z - h)) / (2.0 * h);
    let fy = (v(z + Complex64::new(0.0, h)) - v(z - Complex64::new(0.0, h))) / (2.0 * h);
    let fz = Complex64::new(fx, -fy) * 0.5;
    let out = SmoothForm::Function(f.clone()).dc().unwrap().eval(z);
    assert!((out.dz - fz * DC_CONSTANT).norm() < 1e-8);
    assert!((out.dzb + fz.conj() * DC_CONSTANT).norm() < 1e-8);
}

#[test]
fn dc_degrees_and_composites() {
    assert!(matches!(dc(&CurrentRep::delta(SpherePoint::Infinity)), Err(SphereError::Degree(_))));
    let c = dc(&CurrentRep::constant(4.0)).unwrap();
    if let CurrentRep::Smooth(form) = &c {
        let v = form.eval(Complex64::new(0.3, 0.3));
        assert_eq!((v.dz, v.dzb), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let f = SmoothForm::Function(Function::Gaussian { center: Complex64::new(0.0, 0.0), width: 1.0, amplitude: 1.0.into() });
    let z = Complex64::new(0.4, 0.2);
    // D^ℂ∘D^ℂ = 0 and d∘D^ℂ = 2c ∂̄∂
    assert_eq!(f.dc().unwrap().dc().unwrap().eval(z).top, Complex64::new(0.0, 0.0));
    let ddc = f.dc().unwrap().d().unwrap().eval(z).top;
    let fzzb = match &f {
        SmoothForm::Function(g) => g.jet(z).dzdzb,
        _ => unreachable!(),
    };
    // ∂̄∂f = f_zz̄ dz̄∧dz = −f_zz̄ dz∧dz̄
    assert!((ddc - (-fzzb) * 2.0 * DC_CONSTANT).norm() < 1e-14);
    assert!(ddc.norm() > 0.0);
    // Stokes: the exact form d(D^ℂ f) integrates to zero
    let top = f.dc().unwrap().d().unwrap();
    let v = integrate_sphere(&|w| top.eval(w).density(), &[], 64, false);
    assert!(v.norm() < 1e-10);
}

#[test]
fn harmonic_basis_is_biorthogonal() {
    let a = SpherePoint::new(0.5, -0.5);
    let basis = HarmonicBasis::sphere(a);
    assert_eq!(basis.dim(), 2);
    let p = harmonic_projector_kernel(&basis).unwrap();
    assert_eq!(p.rank(), 2);
    for (i, e) in basis.elements.iter().enumerate() {
        let c = p.project(e, 32).unwrap();
        for (j, v) in c.iter().enumerate() {
            assert_eq!(*v, Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        }
    }
    let exact = SmoothForm::Function(Function::Gaussian { center: Complex64::new(1.0, 0.0), width: 0.6, amplitude: 1.0.into() })
        .dc()
        .unwrap()
        .d()
        .unwrap();
    let c = p.project(&CurrentRep::Smooth(exact), 128).unwrap();
    assert!(c.iter().all(|v| v.norm() < 1e-9), "{c:?}");
}

#[test]
fn non_dual_basis_is_rejected() {
    let mut basis = HarmonicBasis::sphere(SpherePoint::Infinity);
    basis.duals[0] = CurrentRep::Delta { point: SpherePoint::Infinity, coefficient: 2.0.into() };
    assert!(matches!(harmonic_projector_kernel(&basis), Err(SphereError::NotDual(0, 0, _))));
}

#[test]
fn smooth_pairing_uses_quadrature() {
    let one = CurrentRep::constant(1.0);
    let rho = CurrentRep::Smooth(SmoothForm::Density { center: Complex64::new(-2.0, 1.0), width: 0.3, mass: 1.0.into() });
    assert!((pair(&one, &rho, 256).unwrap() - 1.0).norm() < 1e-9);
}

#[test]
fn importance_density_is_normalized() {
    let s = ImportanceSampler::new(&[SpherePoint::new(0.2, 0.0), SpherePoint::Infinity], &[(Complex64::new(1.0, 1.0), 0.3)]);
    let f = |z: Complex64| Complex64::new(s.density(z), 0.0);
    // the radial components have a 1/r profile in their disks, which the local rule absorbs
    let total = integrate_sphere(&f, &[SpherePoint::new(0.2, 0.0), SpherePoint::Infinity], 128, true);
    assert!((total.re - 1.0).abs() < 2e-3, "{total}");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let z = s.sample(&mut rng);
        assert!(s.density(z) > 0.0);
    }
}
