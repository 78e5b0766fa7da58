//! Hodge correlators of the rank-one trivial bundle on the Riemann sphere.
//!
//! A word of decorations `α_0, …, α_m` (one per polygon side, clockwise) is sent
//! to the sum over plane trivalent trees `T` of
//! `∫_{X^{V(T)}} ε(T,W) · α_0 ∧ … ∧ α_m ∧ ξ(G_{E_1}, …, G_{E_k})`,
//! with the Green kernel on every internal edge. Deltas pin their vertex and
//! are integrated symbolically.

mod exterior;
mod integrand;
mod integrate;
pub mod suite;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

pub use exterior::Ext;
pub use integrand::{trace_contract, tree_sign, xi, xi_odd, End, Perturbation, TreeIntegrand};
pub use integrate::{integrate, monte_carlo, quadrature, Integral};

use crate::graded::rotation_sign;
use crate::reduce::pairwise_sum_complex;
use crate::sphere::{RefinementStep, SmoothForm, SphereError, SpherePoint};
use crate::trees::{enumerate_trees, DecoratedPolygon, PlaneTree, TreeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrelatorError {
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("tree {tree}: {source}")]
    Integration { tree: usize, source: SphereError },
}

/// Decoration of one polygon side; the side is the position in the word.
#[derive(Debug, Clone, PartialEq)]
pub enum Decoration {
    /// `c·1`, the degree-0 harmonic class.
    Constant(Complex64),
    /// `c·δ_p`, a representative of the degree-2 class.
    Delta { point: SpherePoint, coefficient: Complex64 },
    Smooth(SmoothForm),
}

impl Decoration {
    pub fn one() -> Self {
        Decoration::Constant(1.0.into())
    }

    pub fn delta(point: SpherePoint) -> Self {
        Decoration::Delta { point, coefficient: 1.0.into() }
    }

    pub fn degree(&self) -> u8 {
        match self {
            Decoration::Constant(_) => 0,
            Decoration::Delta { .. } => 2,
            Decoration::Smooth(f) => f.degree(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        match self {
            Decoration::Constant(a) => Decoration::Constant(a * c),
            Decoration::Delta { point, coefficient } => Decoration::Delta { point: *point, coefficient: coefficient * c },
            Decoration::Smooth(f) => Decoration::Smooth(match f {
                SmoothForm::Function(g) => SmoothForm::Function(g.clone().scaled(c)),
                SmoothForm::OneForm { function, p, q } => SmoothForm::OneForm { function: function.clone(), p: p * c, q: q * c },
                SmoothForm::Density { center, width, mass } => SmoothForm::Density { center: *center, width: *width, mass: mass * c },
                SmoothForm::Laplacian { function, coeff } => SmoothForm::Laplacian { function: function.clone(), coeff: coeff * c },
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationParams {
    /// Starting quadrature resolution per free vertex.
    pub resolution: usize,
    pub max_resolution: usize,
    /// Relative tolerance between successive refinements.
    pub tolerance: f64,
    pub samples: usize,
    pub batches: usize,
}

impl Default for IntegrationParams {
    fn default() -> Self {
        IntegrationParams { resolution: 32, max_resolution: 128, tolerance: 1e-4, samples: 200_000, batches: 64 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorSpec {
    pub decorations: Vec<Decoration>,
    /// Base point `a` of the Green kernel.
    pub base: SpherePoint,
    pub method: Method,
    pub params: IntegrationParams,
    pub seed: u64,
    /// Declared by the user: the word is a cocycle, so gauge changes must not move it.
    pub cocycle: bool,
}

impl CorrelatorSpec {
    pub fn new(decorations: Vec<Decoration>, base: SpherePoint) -> Self {
        CorrelatorSpec { decorations, base, method: Method::Quadrature, params: IntegrationParams::default(), seed: 0, cocycle: false }
    }

    pub fn m(&self) -> usize {
        self.decorations.len().saturating_sub(1)
    }

    pub fn polygon(&self) -> DecoratedPolygon {
        DecoratedPolygon::uniform(self.decorations.len(), "O")
    }

    pub fn validate(&self) -> Result<(), CorrelatorError> {
        if self.decorations.len() < 3 {
            return Err(CorrelatorError::Invalid(format!("need at least 3 decorations, got {}", self.decorations.len())));
        }
        let points: Vec<SpherePoint> = self
            .decorations
            .iter()
            .filter_map(|d| match d {
                Decoration::Delta { point, .. } => Some(*point),
                _ => None,
            })
            .collect();
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(CorrelatorError::Invalid(format!("two delta decorations at {p:?}")));
            }
            if self.m() >= 3 && *p == self.base {
                return Err(CorrelatorError::Invalid(format!("delta at the base point {p:?} meets a Green singularity")));
            }
        }
        let p = &self.params;
        if p.resolution < 4 || p.max_resolution < p.resolution || p.samples == 0 || p.batches < 2 || p.tolerance <= 0.0 {
            return Err(CorrelatorError::Invalid("integration parameters out of range".into()));
        }
        Ok(())
    }

    /// The word rotated `r` steps: `(α_{m−r+1}, …, α_m, α_0, …)`.
    pub fn rotated(&self, r: usize) -> Self {
        let mut s = self.clone();
        let n = s.decorations.len();
        s.decorations.rotate_right(r % n);
        s
    }

    /// Shifted degrees `|α_i| − 1`.
    pub fn shifted_degrees(&self) -> Vec<i32> {
        self.decorations.iter().map(|d| d.degree() as i32 - 1).collect()
    }
}

/// Top-degree selection: `Σ|α_i| + deg ξ = 2·#vertices`, with `deg ξ = k − 1`
/// for `k ≥ 1` internal edges.
pub fn selection_rule(degrees: &[u8]) -> bool {
    if degrees.len() < 3 {
        return false;
    }
    let m = degrees.len() - 1;
    let (v, k) = (m - 1, m - 2);
    let deg_xi = k.saturating_sub(1);
    degrees.iter().map(|&d| d as usize).sum::<usize>() + deg_xi == 2 * v
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeContribution {
    pub index: usize,
    pub tree: PlaneTree,
    pub free_vertices: usize,
    pub value: Complex64,
    pub error: f64,
    pub work: u64,
    pub trace: Vec<RefinementStep>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub error: f64,
    pub selection_rule: bool,
    pub trees: Vec<TreeContribution>,
}

impl Evaluation {
    pub fn work(&self) -> u64 {
        self.trees.iter().map(|t| t.work).sum()
    }
}

pub fn evaluate(spec: &CorrelatorSpec) -> Result<Evaluation, CorrelatorError> {
    evaluate_perturbed(spec, &Perturbation::default())
}

/// [`evaluate`] on a dedicated pool of `workers` threads.
pub fn evaluate_with_workers(spec: &CorrelatorSpec, workers: usize) -> Result<Evaluation, CorrelatorError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CorrelatorError::Invalid(e.to_string()))?;
    pool.install(|| evaluate(spec))
}

pub fn evaluate_perturbed(spec: &CorrelatorSpec, perturbation: &Perturbation) -> Result<Evaluation, CorrelatorError> {
    spec.validate()?;
    let degrees: Vec<u8> = spec.decorations.iter().map(Decoration::degree).collect();
    if !selection_rule(&degrees) {
        return Ok(Evaluation { value: 0.0.into(), error: 0.0, selection_rule: false, trees: Vec::new() });
    }
    let trees = enumerate_trees(&spec.polygon())?;
    let trees: Vec<TreeContribution> = trees
        .into_par_iter()
        .enumerate()
        .map(|(index, tree)| {
            let f = TreeIntegrand::build(&tree, spec, perturbation)?;
            let r = integrate(&f, spec.method, &spec.params, spec.seed, index)
                .map_err(|source| CorrelatorError::Integration { tree: index, source })?;
            Ok(TreeContribution {
                index,
                free_vertices: if f.zero { 0 } else { f.free },
                tree,
                value: r.value,
                error: r.error,
                work: r.work,
                trace: r.trace,
            })
        })
        .collect::<Result<_, CorrelatorError>>()?;
    let values: Vec<Complex64> = trees.iter().map(|t| t.value).collect();
    let error = match spec.method {
        Method::Quadrature => trees.iter().map(|t| t.error).sum(),
        Method::MonteCarlo => trees.iter().map(|t| t.error * t.error).sum::<f64>().sqrt(),
    };
    Ok(Evaluation { value: pairwise_sum_complex(&values), error, selection_rule: true, trees })
}

/// Sign `κ` with `Cor(rotated(r)) = κ·Cor(W)`: the Koszul sign, in shifted
/// degrees, of moving the last letter to the front, `r` times.
pub fn rotation_prediction(spec: &CorrelatorSpec, r: usize) -> f64 {
    let mut s = spec.shifted_degrees();
    let mut sign = 1i8;
    for _ in 0..r {
        sign *= rotation_sign(&s);
        s.rotate_right(1);
    }
    f64::from(sign)
}

/// Deviation measure shared by the invariance checks: relative, or absolute
/// when the reference is below `10⁻⁶`.
pub fn deviation(value: Complex64, reference: Complex64) -> f64 {
    let d = (value - reference).norm();
    if reference.norm() < 1e-6 {
        d
    } else {
        d / reference.norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RotationResult {
    pub rotation: usize,
    pub predicted_sign: f64,
    pub value: Complex64,
    pub error: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CyclicReport {
    pub reference: Evaluation,
    pub rotations: Vec<RotationResult>,
    pub max_deviation: f64,
    /// Max deviation recomputed from each refinement level of the quadrature
    /// traces, coarsest first.
    pub trend: Vec<f64>,
}

/// Value of an evaluation as it stood after refinement level `level`; trees
/// that stopped earlier keep their last value.
pub fn value_at_level(e: &Evaluation, level: usize) -> Complex64 {
    let values: Vec<Complex64> = e
        .trees
        .iter()
        .map(|t| match t.trace.len() {
            0 => t.value,
            n => t.trace[level.min(n - 1)].value,
        })
        .collect();
    pairwise_sum_complex(&values)
}

fn levels(e: &Evaluation) -> usize {
    e.trees.iter().map(|t| t.trace.len()).max().unwrap_or(0).max(1)
}

pub fn cyclic_invariance_check(spec: &CorrelatorSpec) -> Result<CyclicReport, CorrelatorError> {
    let reference = evaluate(spec)?;
    let mut rotations = Vec::new();
    let mut evaluations = Vec::new();
    for r in 1..spec.decorations.len() {
        let e = evaluate(&spec.rotated(r))?;
        let predicted_sign = rotation_prediction(spec, r);
        rotations.push(RotationResult {
            rotation: r,
            predicted_sign,
            value: e.value,
            error: e.error,
            deviation: deviation(e.value, reference.value * predicted_sign),
        });
        evaluations.push((predicted_sign, e));
    }
    let max_deviation = rotations.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let depth = evaluations.iter().map(|(_, e)| levels(e)).fold(levels(&reference), usize::max);
    let trend = (0..depth)
        .map(|l| {
            let v = value_at_level(&reference, l);
            evaluations.iter().map(|(sign, e)| deviation(value_at_level(e, l), v * sign)).fold(0.0, f64::max)
        })
        .collect();
    Ok(CyclicReport { reference, rotations, max_deviation, trend })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeReport {
    pub reference: Complex64,
    pub perturbed: Complex64,
    /// `|perturbed − reference|`.
    pub deviation: f64,
    pub cocycle: bool,
    pub internal_edges: usize,
}

pub fn gauge_perturbation_check(spec: &CorrelatorSpec, perturbation: &Perturbation) -> Result<GaugeReport, CorrelatorError> {
    let reference = evaluate(spec)?.value;
    let perturbed = evaluate_perturbed(spec, perturbation)?.value;
    Ok(GaugeReport {
        reference,
        perturbed,
        deviation: (perturbed - reference).norm(),
        cocycle: spec.cocycle,
        internal_edges: spec.m().saturating_sub(2),
    })
}

/// Sign and normalization constants the correlator values depend on.
pub fn convention_constants() -> Vec<(&'static str, String)> {
    vec![
        ("green.kernel", "log chordal² (x,y) − log chordal² (x,a) − log chordal² (y,a)".into()),
        ("green.scale", crate::sphere::GreenKernel::SCALE.to_string()),
        ("green.offset", crate::sphere::GreenKernel::OFFSET.to_string()),
        ("dc.constant", crate::sphere::DC_CONSTANT.to_string()),
        ("xi.normalization", "1/k!".into()),
        ("xi.green_parity", "odd".into()),
        ("tree.sign", "dfs-orientation * (-1)^(sum i*deg)".into()),
        ("tree.factor_order", "decorations clockwise, then xi".into()),
        ("density", "top coefficient * (-2i)^F".into()),
        ("rotation.sign", "shifted koszul, last to front".into()),
        ("fundamental_class.coefficient", "1".into()),
    ]
}
