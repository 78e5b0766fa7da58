use hodgecor_core::sphere::{green_pde_residual, Function, GreenKernel, SpherePoint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Precision, Real};

pub const RESIDUAL_TOLERANCE: f64 = 1e-3;
pub const CONTROL_THRESHOLD: f64 = 1e-1;
pub const SYMMETRY_PAIRS: usize = 10_000;

pub fn random_point<R: Rng>(rng: &mut R) -> SpherePoint {
    SpherePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

/// A sum of two real Gaussians with random centres, widths and amplitudes.
pub fn random_test_function<R: Rng>(rng: &mut R) -> Function {
    let mut g = || Function::Gaussian {
        center: Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
        width: rng.gen_range(0.4..1.2),
        amplitude: rng.gen_range(-2.0..2.0).into(),
    };
    Function::Sum(vec![g(), g()])
}

fn point_json(p: &SpherePoint) -> Value {
    match p {
        SpherePoint::Infinity => json!("inf"),
        SpherePoint::Finite(z) => json!([z.re, z.im]),
    }
}

/// Largest `|G(x,y) − G(y,x)|` over random pairs and random base points.
pub fn max_asymmetry(pairs: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let base = if i % 4 == 0 { SpherePoint::Infinity } else { random_point(&mut rng) };
        let k = GreenKernel::new(base);
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        if let (Ok(a), Ok(b)) = (k.eval(&x, &y), k.eval(&y, &x)) {
            worst = worst.max((a - b).abs());
        }
    }
    worst
}

pub fn green_check(resolution: usize, samples: usize, seed: u64) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    let mut worst: f64 = 0.0;
    let mut worst_err: f64 = 0.0;
    for _ in 0..samples {
        let base = if rng.gen_bool(0.25) { SpherePoint::Infinity } else { random_point(&mut rng) };
        let phi = random_test_function(&mut rng);
        let y = random_point(&mut rng);
        let r = green_pde_residual(&GreenKernel::new(base), &phi, &y, resolution)?;
        let err = (r.trace[1].value - r.trace[0].value).norm();
        worst = worst.max(r.residual);
        worst_err = worst_err.max(err);
        cases.push(json!({
            "base": point_json(&base),
            "y": point_json(&y),
            "lhs": Real::new(r.lhs, err, Precision::Quadrature),
            "rhs": Real::new(r.rhs, 0.0, Precision::Exact),
            "residual": Real::new(r.residual, err, Precision::Quadrature),
        }));
    }
    // kernel scaled by 2: the residual is |φ(y) − φ(a)|
    let control_phi = Function::Gaussian { center: Complex64::new(0.5, 0.0), width: 0.7, amplitude: 1.0.into() };
    let control = green_pde_residual(
        &GreenKernel::new(SpherePoint::Infinity).with_scale(2.0),
        &control_phi,
        &SpherePoint::new(0.4, 0.1),
        resolution,
    )?;
    let control_err = (control.trace[1].value - control.trace[0].value).norm();
    let asym = max_asymmetry(SYMMETRY_PAIRS, seed);
    Ok(json!({
        "resolution": resolution,
        "cases": cases,
        "max_residual": Real::new(worst, worst_err, Precision::Quadrature),
        "residual_tolerance": RESIDUAL_TOLERANCE,
        "residual_pass": worst < RESIDUAL_TOLERANCE,
        "control": {
            "scale": 2.0,
            "residual": Real::new(control.residual, control_err, Precision::Quadrature),
            "threshold": CONTROL_THRESHOLD,
            "pass": control.residual > CONTROL_THRESHOLD,
        },
        "symmetry": {
            "pairs": SYMMETRY_PAIRS,
            "max_asymmetry": Real::new(asym, 0.0, Precision::Exact),
            "pass": asym == 0.0,
        },
    }))
}
