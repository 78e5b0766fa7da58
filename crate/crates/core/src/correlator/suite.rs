//! Fixed regression specs used by the invariance and cross-method checks.

use num_complex::Complex64;

use super::{CorrelatorSpec, Decoration};
use crate::sphere::{Function, SmoothForm, SpherePoint};

fn bump(re: f64, im: f64, width: f64) -> Decoration {
    Decoration::Smooth(SmoothForm::Density { center: Complex64::new(re, im), width, mass: 1.0.into() })
}

fn gaussian(re: f64, im: f64, width: f64) -> Function {
    Function::Gaussian { center: Complex64::new(re, im), width, amplitude: 1.0.into() }
}

fn delta(re: f64, im: f64) -> Decoration {
    Decoration::delta(SpherePoint::new(re, im))
}

fn cocycle(mut s: CorrelatorSpec) -> CorrelatorSpec {
    s.cocycle = true;
    s
}

/// Named specs covering triangles, squares, a pentagon and a hexagon, with
/// symbolic and numeric trees.
pub fn regression_suite() -> Vec<(&'static str, CorrelatorSpec)> {
    let inf = SpherePoint::Infinity;
    let one = Decoration::one;
    vec![
        ("triangle_delta_base", CorrelatorSpec::new(vec![one(), one(), Decoration::Delta { point: inf, coefficient: 2.5.into() }], inf)),
        ("triangle_bump", CorrelatorSpec::new(vec![bump(0.3, -0.2, 0.4), one(), one()], inf)),
        (
            "triangle_function_bump",
            CorrelatorSpec::new(vec![Decoration::Smooth(SmoothForm::Function(gaussian(0.0, 0.5, 0.8))), bump(0.4, 0.1, 0.5), one()], inf),
        ),
        ("square_delta_adjacent", CorrelatorSpec::new(vec![delta(0.5, 0.0), delta(-0.3, 0.8), one(), one()], inf)),
        ("square_delta_alternating", cocycle(CorrelatorSpec::new(vec![delta(0.5, 0.0), one(), delta(-0.3, 0.8), one()], inf))),
        (
            "square_delta_finite_base",
            CorrelatorSpec::new(vec![delta(0.5, 0.0), delta(-0.3, 0.8), one(), one()], SpherePoint::new(1.2, -0.7)),
        ),
        ("square_bump_delta", CorrelatorSpec::new(vec![bump(0.2, 0.2, 0.3), delta(-1.0, 0.5), one(), one()], inf)),
        (
            "square_bump_alternating",
            cocycle(CorrelatorSpec::new(vec![bump(0.2, 0.2, 0.3), one(), delta(-1.0, 0.5), one()], SpherePoint::new(0.0, -1.5))),
        ),
        ("square_two_bumps", {
            let mut s = CorrelatorSpec::new(vec![bump(0.6, 0.0, 0.25), bump(-0.5, 0.6, 0.25), one(), one()], inf);
            s.params.resolution = 16;
            s.params.max_resolution = 64;
            s.params.tolerance = 1e-2;
            s
        }),
        (
            "pentagon_exact_one_form",
            CorrelatorSpec::new(
                vec![
                    delta(0.7, 0.2),
                    delta(-0.5, -0.4),
                    Decoration::Smooth(SmoothForm::Function(gaussian(0.1, 0.6, 0.7)).d().unwrap()),
                    one(),
                    one(),
                ],
                inf,
            ),
        ),
        ("hexagon_deltas", CorrelatorSpec::new(vec![delta(0.8, 0.0), delta(-0.4, 0.7), one(), delta(-0.4, -0.7), one(), one()], inf)),
    ]
}
