//! Closed-form smooth forms in the finite chart.
//!
//! Forms are written in the basis `1`, `dz`, `dz̄`, `dz∧dz̄`. Every form in the
//! catalogue is built from degree-0 functions whose first derivatives and
//! mixed second derivative are known exactly, so `d` and `D^ℂ` stay closed form.

use num_complex::Complex64;

use super::point::SpherePoint;
use super::SphereError;

/// Normalization of `D^ℂ = c·(D′ − D″)`.
pub const DC_CONSTANT: f64 = 1.0;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value and derivatives of a function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub dz: Complex64,
    pub dzb: Complex64,
    /// `∂²f/∂z∂z̄`, a quarter of the Laplacian.
    pub dzdzb: Complex64,
}

impl Jet {
    fn zero() -> Self {
        Jet { value: ZERO, dz: ZERO, dzb: ZERO, dzdzb: ZERO }
    }

    fn add(self, o: Jet) -> Jet {
        Jet { value: self.value + o.value, dz: self.dz + o.dz, dzb: self.dzb + o.dzb, dzdzb: self.dzdzb + o.dzdzb }
    }

    pub fn laplacian(&self) -> Complex64 {
        self.dzdzb * 4.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Function {
    Constant(Complex64),
    /// `amplitude · exp(−|z−center|²/width²)`.
    Gaussian { center: Complex64, width: f64, amplitude: Complex64 },
    /// `log|z−center|²`, singular at `center` and at ∞.
    LogModulus { center: Complex64 },
    Sum(Vec<Function>),
    Scaled { factor: Complex64, inner: Box<Function> },
}

impl Function {
    pub fn jet(&self, z: Complex64) -> Jet {
        match self {
            Function::Constant(c) => Jet { value: *c, ..Jet::zero() },
            Function::Gaussian { center, width, amplitude } => {
                let d = z - center;
                let w2 = width * width;
                let f = amplitude * (-d.norm_sqr() / w2).exp();
                Jet {
                    value: f,
                    dz: -f * d.conj() / w2,
                    dzb: -f * d / w2,
                    dzdzb: f * (d.norm_sqr() / (w2 * w2) - 1.0 / w2),
                }
            }
            Function::LogModulus { center } => {
                let d = z - center;
                Jet { value: Complex64::new(d.norm_sqr().ln(), 0.0), dz: d.inv(), dzb: d.conj().inv(), dzdzb: ZERO }
            }
            Function::Sum(parts) => parts.iter().fold(Jet::zero(), |acc, p| acc.add(p.jet(z))),
            Function::Scaled { factor, inner } => {
                let j = inner.jet(z);
                Jet { value: j.value * factor, dz: j.dz * factor, dzb: j.dzb * factor, dzdzb: j.dzdzb * factor }
            }
        }
    }

    /// Value at any point of the sphere; `None` where the function is singular.
    pub fn value_at(&self, p: &SpherePoint) -> Option<Complex64> {
        match (self, p) {
            (Function::LogModulus { center }, SpherePoint::Finite(z)) if z == center => None,
            (Function::Scaled { factor, inner }, _) => inner.value_at(p).map(|v| v * factor),
            (_, SpherePoint::Finite(z)) => Some(self.jet(*z).value),
            (Function::Constant(c), SpherePoint::Infinity) => Some(*c),
            (Function::Gaussian { .. }, SpherePoint::Infinity) => Some(ZERO),
            (Function::LogModulus { .. }, SpherePoint::Infinity) => None,
            (Function::Sum(parts), SpherePoint::Infinity) => {
                parts.iter().map(|f| f.value_at(p)).sum::<Option<Complex64>>()
            }
        }
    }

    /// Finite points where the function is not smooth.
    pub fn singular_points(&self) -> Vec<SpherePoint> {
        match self {
            Function::LogModulus { center } => vec![SpherePoint::Finite(*center), SpherePoint::Infinity],
            Function::Sum(parts) => parts.iter().flat_map(Function::singular_points).collect(),
            Function::Scaled { inner, .. } => inner.singular_points(),
            _ => Vec::new(),
        }
    }
}

/// A form of degree 0, 1 or 2 on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub enum SmoothForm {
    Function(Function),
    /// `p·f_z dz + q·f_z̄ dz̄`.
    OneForm { function: Function, p: Complex64, q: Complex64 },
    /// `mass/(π width²) · exp(−|z−center|²/width²) dx∧dy`, total integral `mass`.
    Density { center: Complex64, width: f64, mass: Complex64 },
    /// `coeff · f_zz̄ dz∧dz̄`.
    Laplacian { function: Function, coeff: Complex64 },
}

/// A form evaluated at a point, coefficients on `1, dz, dz̄, dz∧dz̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointForm {
    pub degree: u8,
    pub value: Complex64,
    pub dz: Complex64,
    pub dzb: Complex64,
    pub top: Complex64,
}

impl PointForm {
    /// Coefficient of `dx∧dy`, using `dz∧dz̄ = −2i dx∧dy`.
    pub fn density(&self) -> Complex64 {
        self.top * Complex64::new(0.0, -2.0)
    }
}

impl SmoothForm {
    pub fn function(f: Function) -> Self {
        SmoothForm::Function(f)
    }

    pub fn degree(&self) -> u8 {
        match self {
            SmoothForm::Function(_) => 0,
            SmoothForm::OneForm { .. } => 1,
            SmoothForm::Density { .. } | SmoothForm::Laplacian { .. } => 2,
        }
    }

    pub fn eval(&self, z: Complex64) -> PointForm {
        let mut out = PointForm { degree: self.degree(), value: ZERO, dz: ZERO, dzb: ZERO, top: ZERO };
        match self {
            SmoothForm::Function(f) => out.value = f.jet(z).value,
            SmoothForm::OneForm { function, p, q } => {
                let j = function.jet(z);
                out.dz = p * j.dz;
                out.dzb = q * j.dzb;
            }
            SmoothForm::Density { center, width, mass } => {
                let w2 = width * width;
                let rho = mass * (-(z - center).norm_sqr() / w2).exp() / (std::f64::consts::PI * w2);
                // dx∧dy = (i/2) dz∧dz̄
                out.top = rho * I * 0.5;
            }
            SmoothForm::Laplacian { function, coeff } => out.top = coeff * function.jet(z).dzdzb,
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Result<SmoothForm, SphereError> {
        match self {
            SmoothForm::Function(f) => Ok(SmoothForm::OneForm { function: f.clone(), p: 1.0.into(), q: 1.0.into() }),
            // d(a dz + b dz̄) = (∂b − ∂̄a) dz∧dz̄
            SmoothForm::OneForm { function, p, q } => Ok(SmoothForm::Laplacian { function: function.clone(), coeff: q - p }),
            _ => Err(SphereError::Degree("d of a 2-form".into())),
        }
    }

    /// `D^ℂ = c·(∂ − ∂̄)`.
    pub fn dc(&self) -> Result<SmoothForm, SphereError> {
        let c = DC_CONSTANT;
        match self {
            SmoothForm::Function(f) => Ok(SmoothForm::OneForm { function: f.clone(), p: c.into(), q: (-c).into() }),
            // ∂(b dz̄) = ∂b dz∧dz̄, ∂̄(a dz) = −∂̄a dz∧dz̄
            SmoothForm::OneForm { function, p, q } => {
                Ok(SmoothForm::Laplacian { function: function.clone(), coeff: (p + q) * c })
            }
            _ => Err(SphereError::Degree("D^ℂ of a 2-form".into())),
        }
    }

    pub fn singular_points(&self) -> Vec<SpherePoint> {
        match self {
            SmoothForm::Function(f) | SmoothForm::OneForm { function: f, .. } | SmoothForm::Laplacian { function: f, .. } => {
                f.singular_points()
            }
            SmoothForm::Density { .. } => Vec::new(),
        }
    }

    /// Points near which the form carries most of its mass, with a length scale.
    pub fn focus(&self) -> Vec<(Complex64, f64)> {
        fn of(f: &Function) -> Vec<(Complex64, f64)> {
            match f {
                Function::Gaussian { center, width, .. } => vec![(*center, *width)],
                Function::Sum(p) => p.iter().flat_map(of).collect(),
                Function::Scaled { inner, .. } => of(inner),
                _ => Vec::new(),
            }
        }
        match self {
            SmoothForm::Density { center, width, .. } => vec![(*center, *width)],
            SmoothForm::Function(f) | SmoothForm::OneForm { function: f, .. } | SmoothForm::Laplacian { function: f, .. } => of(f),
        }
    }
}

impl Function {
    /// `c · self`.
    pub fn scaled(self, c: Complex64) -> Function {
        match self {
            Function::Constant(a) => Function::Constant(a * c),
            Function::Gaussian { center, width, amplitude } => Function::Gaussian { center, width, amplitude: amplitude * c },
            Function::Sum(parts) => Function::Sum(parts.into_iter().map(|p| p.scaled(c)).collect()),
            Function::Scaled { factor, inner } => Function::Scaled { factor: factor * c, inner },
            f @ Function::LogModulus { .. } => Function::Scaled { factor: c, inner: Box::new(f) },
        }
    }
}
