//! Correlator spec files (JSON). See `docs/spec.schema.json`.

use hodgecor_core::correlator::{CorrelatorSpec, Decoration, IntegrationParams, Method, Perturbation};
use hodgecor_core::sphere::{Function, SmoothForm, SpherePoint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dgcat_format::{json_location, strip_position};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Infinity {
    #[serde(rename = "inf")]
    Inf,
}

/// `"inf"` or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Infinity(Infinity),
    Finite([f64; 2]),
}

impl PointSpec {
    pub fn point(&self) -> SpherePoint {
        match self {
            PointSpec::Infinity(_) => SpherePoint::Infinity,
            PointSpec::Finite([re, im]) => SpherePoint::new(*re, *im),
        }
    }

    pub fn from_point(p: &SpherePoint) -> Self {
        match p {
            SpherePoint::Infinity => PointSpec::Infinity(Infinity::Inf),
            SpherePoint::Finite(z) => PointSpec::Finite([z.re, z.im]),
        }
    }
}

/// A real number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Complex([f64; 2]),
}

impl ComplexSpec {
    pub fn value(&self) -> Complex64 {
        match self {
            ComplexSpec::Real(x) => Complex64::new(*x, 0.0),
            ComplexSpec::Complex([re, im]) => Complex64::new(*re, *im),
        }
    }

    fn from_value(c: Complex64) -> Self {
        if c.im == 0.0 {
            ComplexSpec::Real(c.re)
        } else {
            ComplexSpec::Complex([c.re, c.im])
        }
    }
}

fn unit() -> ComplexSpec {
    ComplexSpec::Real(1.0)
}

fn z(c: [f64; 2]) -> Complex64 {
    Complex64::new(c[0], c[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Constant { value: ComplexSpec },
    Gaussian {
        center: [f64; 2],
        width: f64,
        #[serde(default = "unit")]
        amplitude: ComplexSpec,
    },
    LogModulus { center: [f64; 2] },
    Sum { terms: Vec<FunctionSpec> },
    Scaled { factor: ComplexSpec, inner: Box<FunctionSpec> },
}

impl FunctionSpec {
    pub fn function(&self) -> Result<Function, String> {
        Ok(match self {
            FunctionSpec::Constant { value } => Function::Constant(value.value()),
            FunctionSpec::Gaussian { center, width, amplitude } => {
                if !(*width > 0.0) {
                    return Err(format!("gaussian width must be positive, got {width}"));
                }
                Function::Gaussian { center: z(*center), width: *width, amplitude: amplitude.value() }
            }
            FunctionSpec::LogModulus { center } => Function::LogModulus { center: z(*center) },
            FunctionSpec::Sum { terms } => Function::Sum(terms.iter().map(FunctionSpec::function).collect::<Result<_, _>>()?),
            FunctionSpec::Scaled { factor, inner } => Function::Scaled { factor: factor.value(), inner: Box::new(inner.function()?) },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DecorationSpec {
    /// `c·1`.
    Constant {
        #[serde(default = "unit")]
        coefficient: ComplexSpec,
    },
    /// `c·δ_p`.
    Delta {
        point: PointSpec,
        #[serde(default = "unit")]
        coefficient: ComplexSpec,
    },
    /// Gaussian 2-form of total mass `mass`.
    Density {
        center: [f64; 2],
        width: f64,
        #[serde(default = "unit")]
        mass: ComplexSpec,
    },
    Function { function: FunctionSpec },
    /// `p·f_z dz + q·f_z̄ dz̄`.
    OneForm { function: FunctionSpec, p: ComplexSpec, q: ComplexSpec },
    /// `coeff·f_zz̄ dz∧dz̄`.
    Laplacian { function: FunctionSpec, coeff: ComplexSpec },
}

impl DecorationSpec {
    pub fn decoration(&self) -> Result<Decoration, String> {
        Ok(match self {
            DecorationSpec::Constant { coefficient } => Decoration::Constant(coefficient.value()),
            DecorationSpec::Delta { point, coefficient } => Decoration::Delta { point: point.point(), coefficient: coefficient.value() },
            DecorationSpec::Density { center, width, mass } => {
                if !(*width > 0.0) {
                    return Err(format!("density width must be positive, got {width}"));
                }
                Decoration::Smooth(SmoothForm::Density { center: z(*center), width: *width, mass: mass.value() })
            }
            DecorationSpec::Function { function } => Decoration::Smooth(SmoothForm::Function(function.function()?)),
            DecorationSpec::OneForm { function, p, q } => {
                Decoration::Smooth(SmoothForm::OneForm { function: function.function()?, p: p.value(), q: q.value() })
            }
            DecorationSpec::Laplacian { function, coeff } => {
                Decoration::Smooth(SmoothForm::Laplacian { function: function.function()?, coeff: coeff.value() })
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MethodSpec {
    #[default]
    Quad,
    Mc,
}

impl MethodSpec {
    pub fn method(self) -> Method {
        match self {
            MethodSpec::Quad => Method::Quadrature,
            MethodSpec::Mc => Method::MonteCarlo,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MethodSpec::Quad => "quad",
            MethodSpec::Mc => "mc",
        }
    }
}

/// Kernel change used by `correlator gauge`: `G + epsilon·(η(x) + η(y)) + constant`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeSpec {
    #[serde(default)]
    pub eta: Option<FunctionSpec>,
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default)]
    pub constant: f64,
}

impl Default for GaugeSpec {
    /// A small bump: `10⁻³·exp(−|z − 0.2 + 0.1i|²/0.16)`.
    fn default() -> Self {
        GaugeSpec {
            eta: Some(FunctionSpec::Gaussian { center: [0.2, -0.1], width: 0.4, amplitude: unit() }),
            epsilon: 1e-3,
            constant: 0.0,
        }
    }
}

impl GaugeSpec {
    pub fn perturbation(&self) -> Result<Perturbation, String> {
        Ok(Perturbation { eta: self.eta.as_ref().map(FunctionSpec::function).transpose()?, epsilon: self.epsilon, constant: self.constant })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    /// Number of polygon sides; must equal the number of decorations.
    pub ngon: usize,
    pub decorations: Vec<DecorationSpec>,
    #[serde(default = "infinity")]
    pub base: PointSpec,
    #[serde(default)]
    pub method: MethodSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batches: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub cocycle: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeSpec>,
}

fn infinity() -> PointSpec {
    PointSpec::Infinity(Infinity::Inf)
}

pub fn parse_spec(text: &str, file: &str) -> Result<SpecFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { location: json_location(file, &e), message: strip_position(&e) })
}

impl SpecFile {
    pub fn to_spec(&self) -> Result<CorrelatorSpec, CliError> {
        let invalid = |m: String| CliError::invalid("correlator spec", m);
        if self.ngon != self.decorations.len() {
            return Err(invalid(format!("ngon = {} but {} decorations given", self.ngon, self.decorations.len())));
        }
        let decorations = self
            .decorations
            .iter()
            .enumerate()
            .map(|(i, d)| d.decoration().map_err(|m| invalid(format!("decorations[{i}]: {m}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut spec = CorrelatorSpec::new(decorations, self.base.point());
        spec.method = self.method.method();
        let d = IntegrationParams::default();
        spec.params = IntegrationParams {
            resolution: self.resolution.unwrap_or(d.resolution),
            max_resolution: self.max_resolution.unwrap_or(d.max_resolution.max(self.resolution.unwrap_or(0) * 4)),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
            samples: self.samples.unwrap_or(d.samples),
            batches: self.batches.unwrap_or(d.batches),
        };
        spec.seed = self.seed;
        spec.cocycle = self.cocycle;
        spec.validate()?;
        Ok(spec)
    }

    /// The file describing an engine spec. Smooth decorations other than
    /// densities are not representable and give `None`.
    pub fn from_spec(spec: &CorrelatorSpec) -> Option<Self> {
        let decorations = spec
            .decorations
            .iter()
            .map(|d| match d {
                Decoration::Constant(c) => Some(DecorationSpec::Constant { coefficient: ComplexSpec::from_value(*c) }),
                Decoration::Delta { point, coefficient } => {
                    Some(DecorationSpec::Delta { point: PointSpec::from_point(point), coefficient: ComplexSpec::from_value(*coefficient) })
                }
                Decoration::Smooth(SmoothForm::Density { center, width, mass }) => {
                    Some(DecorationSpec::Density { center: [center.re, center.im], width: *width, mass: ComplexSpec::from_value(*mass) })
                }
                Decoration::Smooth(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        let p = spec.params;
        Some(SpecFile {
            ngon: decorations.len(),
            decorations,
            base: PointSpec::from_point(&spec.base),
            method: match spec.method {
                Method::Quadrature => MethodSpec::Quad,
                Method::MonteCarlo => MethodSpec::Mc,
            },
            resolution: Some(p.resolution),
            max_resolution: Some(p.max_resolution),
            tolerance: Some(p.tolerance),
            samples: Some(p.samples),
            batches: Some(p.batches),
            seed: spec.seed,
            cocycle: spec.cocycle,
            gauge: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_spec() {
        let s = parse_spec(r#"{"ngon": 3, "decorations": [{"kind": "constant"}, {"kind": "constant"}, {"kind": "delta", "point": [0.5, 0], "coefficient": 2.5}]}"#, "s").unwrap();
        let spec = s.to_spec().unwrap();
        assert_eq!(spec.base, SpherePoint::Infinity);
        assert_eq!(spec.decorations[2], Decoration::Delta { point: SpherePoint::new(0.5, 0.0), coefficient: 2.5.into() });
        assert_eq!(spec.params, IntegrationParams::default());
    }

    #[test]
    fn errors() {
        let e = parse_spec("{\"ngon\": 3,\n \"decorations\": [{\"kind\": \"blob\"}]}", "s").unwrap_err();
        match e {
            CliError::Parse { location, .. } => assert_eq!(location.line, 2),
            other => panic!("{other:?}"),
        }
        let s = parse_spec(r#"{"ngon": 4, "decorations": [{"kind": "constant"}]}"#, "s").unwrap();
        assert!(matches!(s.to_spec(), Err(CliError::Validation { .. })));
        let s = parse_spec(r#"{"ngon": 3, "decorations": [{"kind": "constant"}, {"kind": "constant"}, {"kind": "constant"}], "resolution": 2}"#, "s").unwrap();
        assert!(matches!(s.to_spec(), Err(CliError::Validation { .. })));
    }

    #[test]
    fn suite_round_trips() {
        for (name, spec) in hodgecor_core::correlator::suite::regression_suite() {
            if let Some(f) = SpecFile::from_spec(&spec) {
                let text = serde_json::to_string(&f).unwrap();
                assert_eq!(parse_spec(&text, name).unwrap().to_spec().unwrap(), spec, "{name}");
            }
        }
    }
}
