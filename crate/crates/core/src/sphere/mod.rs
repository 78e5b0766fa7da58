//! Analysis on the Riemann sphere for the trivial rank-one bundle.

mod forms;
mod green;
mod point;
pub mod quadrature;
#[cfg(test)]
mod tests;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

pub use forms::{Function, Jet, PointForm, SmoothForm, DC_CONSTANT};
pub use green::{green_eval, GreenKernel};
pub use point::{chordal_log, chordal_log_in_chart, chordal_ratio, Chart, SpherePoint};
pub use quadrature::{integrate_adaptive, integrate_disk, integrate_sphere, Estimate, ImportanceSampler, RefinementStep};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("basis is not dual: pairing ({0}, {1}) = {2}")]
    NotDual(usize, usize, Complex64),
    #[error("quadrature did not converge after {} refinements", trace.len())]
    Convergence { trace: Vec<RefinementStep> },
}

/// A current on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub enum CurrentRep {
    Smooth(SmoothForm),
    /// `coefficient · δ_point`, a current of degree 2.
    Delta { point: SpherePoint, coefficient: Complex64 },
    /// A Green kernel, a degree-0 current on `X × X`.
    Green(GreenKernel),
}

impl CurrentRep {
    pub fn constant(c: f64) -> Self {
        CurrentRep::Smooth(SmoothForm::Function(Function::Constant(c.into())))
    }

    pub fn delta(point: SpherePoint) -> Self {
        CurrentRep::Delta { point, coefficient: 1.0.into() }
    }

    pub fn degree(&self) -> u8 {
        match self {
            CurrentRep::Smooth(f) => f.degree(),
            CurrentRep::Delta { .. } => 2,
            CurrentRep::Green(_) => 0,
        }
    }
}

/// `D^ℂ` on a current of degree at most 1.
pub fn dc(form: &CurrentRep) -> Result<CurrentRep, SphereError> {
    match form {
        CurrentRep::Smooth(f) => f.dc().map(CurrentRep::Smooth),
        CurrentRep::Delta { .. } => Err(SphereError::Degree("D^ℂ of a degree-2 current".into())),
        CurrentRep::Green(_) => Err(SphereError::Degree("D^ℂ of a kernel on X×X is taken per variable".into())),
    }
}

/// `∫_X α ∧ β`. Exact when a delta is involved, quadrature otherwise.
pub fn pair(alpha: &CurrentRep, beta: &CurrentRep, resolution: usize) -> Result<Complex64, SphereError> {
    if alpha.degree() + beta.degree() != 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match (alpha, beta) {
        (CurrentRep::Delta { point, coefficient }, CurrentRep::Smooth(SmoothForm::Function(f)))
        | (CurrentRep::Smooth(SmoothForm::Function(f)), CurrentRep::Delta { point, coefficient }) => f
            .value_at(point)
            .map(|v| v * coefficient)
            .ok_or_else(|| SphereError::Singular(format!("function at {point:?}"))),
        (CurrentRep::Smooth(a), CurrentRep::Smooth(b)) => {
            let mut singular = a.singular_points();
            singular.extend(b.singular_points());
            let density = |z: Complex64| {
                let (x, y) = (a.eval(z), b.eval(z));
                // (x₀ + x₁dz + x₂dz̄ + x₃dz∧dz̄)∧(…) top part
                let top = x.value * y.top + x.top * y.value + x.dz * y.dzb - x.dzb * y.dz;
                top * Complex64::new(0.0, -2.0)
            };
            Ok(integrate_sphere(&density, &singular, resolution, true))
        }
        _ => Err(SphereError::Degree("pairing involving a kernel on X×X".into())),
    }
}

/// Harmonic representatives `{α_i}` with duals `{α_i^∨}`, `∫ α_i ∧ α_j^∨ = δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicBasis {
    pub elements: Vec<CurrentRep>,
    pub duals: Vec<CurrentRep>,
}

impl HarmonicBasis {
    /// `{1, δ_a}` with duals `{δ_a, 1}`.
    pub fn sphere(a: SpherePoint) -> Self {
        HarmonicBasis {
            elements: vec![CurrentRep::constant(1.0), CurrentRep::delta(a)],
            duals: vec![CurrentRep::delta(a), CurrentRep::constant(1.0)],
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn validate(&self, resolution: usize, tolerance: f64) -> Result<(), SphereError> {
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.duals.iter().enumerate() {
                let v = pair(a, b, resolution)?;
                let expect = if i == j { 1.0 } else { 0.0 };
                if (v - expect).norm() > tolerance {
                    return Err(SphereError::NotDual(i, j, v));
                }
            }
        }
        Ok(())
    }
}

/// `P_Har = Σ α_i^∨ ⊗ α_i` as a list of product terms on `X × X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorKernel {
    pub basis: HarmonicBasis,
    pub terms: Vec<(CurrentRep, CurrentRep)>,
}

impl ProjectorKernel {
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    /// Coefficients of the harmonic part of `beta` on the basis.
    pub fn project(&self, beta: &CurrentRep, resolution: usize) -> Result<Vec<Complex64>, SphereError> {
        self.basis.duals.iter().map(|d| pair(beta, d, resolution)).collect()
    }
}

pub fn harmonic_projector_kernel(basis: &HarmonicBasis) -> Result<ProjectorKernel, SphereError> {
    basis.validate(64, 1e-9)?;
    let terms = basis.duals.iter().cloned().zip(basis.elements.iter().cloned()).collect();
    Ok(ProjectorKernel { basis: basis.clone(), terms })
}

/// Outcome of the weak-form test of the Green equation against one function.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    /// `∫ G(x,y) Δφ(x)/4π dA(x)`.
    pub lhs: f64,
    /// `φ(y) − φ(a)`, the pairing with `δ_Δ − P_Har`.
    pub rhs: f64,
    pub residual: f64,
    pub trace: Vec<RefinementStep>,
}

/// Weak residual `|∫ G(·,y)·(2πi)⁻¹∂̄∂φ − (φ(y) − φ(a))|` for a real test function.
///
/// `(2πi)⁻¹∂̄∂φ = Δφ/4π dx∧dy`, and `P_Har = δ_a⊗1 + 1⊗δ_a` contributes `φ(a)`.
pub fn green_pde_residual(
    kernel: &GreenKernel,
    test: &Function,
    y: &SpherePoint,
    resolution: usize,
) -> Result<Residual, SphereError> {
    let phi_y = test.value_at(y).ok_or_else(|| SphereError::Singular("test function at y".into()))?;
    let phi_a = test.value_at(&kernel.base).ok_or_else(|| SphereError::Singular("test function at a".into()))?;
    let density = |z: Complex64| -> Complex64 {
        match kernel.eval(&SpherePoint::Finite(z), y) {
            Ok(g) => test.jet(z).laplacian() * (g / (4.0 * PI)),
            Err(_) => Complex64::new(0.0, 0.0),
        }
    };
    let mut singular = vec![*y, kernel.base];
    singular.extend(test.singular_points());
    let coarse = integrate_sphere(&density, &singular, resolution / 2, true);
    let fine = integrate_sphere(&density, &singular, resolution, true);
    let trace = vec![
        RefinementStep { resolution: resolution / 2, value: coarse },
        RefinementStep { resolution, value: fine },
    ];
    let rhs = (phi_y - phi_a).re;
    Ok(Residual { lhs: fine.re, rhs, residual: (fine.re - rhs).abs(), trace })
}

/// `∫_{|x−y|<r} |G(x,y)| dA(x)` in the chart of `y`.
pub fn diagonal_mass(kernel: &GreenKernel, y: Complex64, r: f64, resolution: usize) -> f64 {
    let f = |z: Complex64| {
        kernel.eval(&SpherePoint::Finite(z), &SpherePoint::Finite(y)).map_or(0.0, f64::abs).into()
    };
    integrate_disk(&f, y, r, resolution).re
}
