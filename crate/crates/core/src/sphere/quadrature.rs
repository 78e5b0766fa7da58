//! Integration of densities over the sphere.
//!
//! A density `f` (coefficient of `dx∧dy` in the finite chart) is split by a
//! smooth partition of unity. Around every singular point a disk in a local
//! chart is integrated in polar coordinates with `r = ρt²`, which absorbs
//! `log r` and `1/r` behaviour; the smooth remainder is integrated with
//! Gauss–Legendre nodes in `cos ψ` times uniform nodes in the longitude.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::point::SpherePoint;
use super::SphereError;
use crate::reduce::pairwise_sum_complex;

const RHO_MAX: f64 = 1.0;
/// Fraction of the disk radius on which the cutoff is identically 1.
const FLAT: f64 = 0.05;

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, cached per order.
pub fn gauss_legendre(n: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let rule = Arc::new(compute_gauss_legendre(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let step = p1 / dp;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Coordinate `w` around a point: `z = base + w`, or `z = 1/(base + w)` when
/// the point lies outside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalChart {
    inverted: bool,
    base: Complex64,
}

impl LocalChart {
    pub fn around(p: &SpherePoint) -> Self {
        match p {
            SpherePoint::Finite(z) if z.norm() <= 1.0 => LocalChart { inverted: false, base: *z },
            SpherePoint::Finite(z) => LocalChart { inverted: true, base: z.inv() },
            SpherePoint::Infinity => LocalChart { inverted: true, base: Complex64::new(0.0, 0.0) },
        }
    }

    pub fn to_z(&self, w: Complex64) -> Complex64 {
        if self.inverted {
            (self.base + w).inv()
        } else {
            self.base + w
        }
    }

    /// Local coordinate of a point, `None` if the chart misses it.
    pub fn local(&self, p: &SpherePoint) -> Option<Complex64> {
        match (self.inverted, p) {
            (false, SpherePoint::Finite(z)) => Some(z - self.base),
            (false, SpherePoint::Infinity) => None,
            (true, SpherePoint::Finite(z)) if z.norm_sqr() == 0.0 => None,
            (true, SpherePoint::Finite(z)) => Some(z.inv() - self.base),
            (true, SpherePoint::Infinity) => Some(-self.base),
        }
    }

    /// `|dz/dw|²`.
    pub fn jacobian(&self, w: Complex64) -> f64 {
        if self.inverted {
            1.0 / (self.base + w).norm_sqr().powi(2)
        } else {
            1.0
        }
    }
}

/// A cutoff disk around one singular point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub chart: LocalChart,
    pub radius: f64,
}

impl Disk {
    fn cutoff(&self, z: Complex64) -> f64 {
        match self.chart.local(&SpherePoint::Finite(z)) {
            Some(w) => bump(w.norm() / self.radius),
            None => 0.0,
        }
    }
}

/// Smooth step: 1 on `[0, FLAT]`, 0 on `[1, ∞)`.
fn bump(t: f64) -> f64 {
    if t <= FLAT {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let u = (1.0 - t) / (1.0 - FLAT);
    let h = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    h(u) / (h(u) + h(1.0 - u))
}

fn dedup(points: &[SpherePoint]) -> Vec<SpherePoint> {
    let mut out: Vec<SpherePoint> = Vec::new();
    for p in points {
        if !out.contains(p) {
            out.push(*p);
        }
    }
    out
}

/// Disks around each distinct singular point, small enough that no disk
/// contains another singular point.
pub fn plan_disks(singular: &[SpherePoint]) -> Vec<Disk> {
    let pts = dedup(singular);
    pts.iter()
        .enumerate()
        .map(|(k, p)| {
            let chart = LocalChart::around(p);
            let mut radius = RHO_MAX;
            for (j, q) in pts.iter().enumerate() {
                if j != k {
                    if let Some(w) = chart.local(q) {
                        radius = radius.min(0.4 * w.norm());
                    }
                }
            }
            Disk { chart, radius }
        })
        .collect()
}

fn finite(v: Complex64) -> Complex64 {
    if v.re.is_finite() && v.im.is_finite() {
        v
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Number of nodes [`integrate_sphere`] uses for these singular points.
pub fn quadrature_nodes(singular: &[SpherePoint], resolution: usize) -> u64 {
    let n = resolution.max(4);
    let nd = (n / 2).max(4);
    (n * n + plan_disks(singular).len() * nd * nd) as u64
}

/// `∫ f dx dy` over the sphere; `f` may be log or `1/r` singular at `singular`.
///
/// The global grid has `resolution²` nodes and each disk `(resolution/2)²`.
/// Terms are summed in a fixed order, so `parallel` does not change the bits.
pub fn integrate_sphere<F>(f: &F, singular: &[SpherePoint], resolution: usize, parallel: bool) -> Complex64
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let n = resolution.max(4);
    let nd = (n / 2).max(4);
    let disks = plan_disks(singular);
    let global = gauss_legendre(n);
    let local = gauss_legendre(nd);
    let dtheta = 2.0 * PI / n as f64;
    let dphi = 2.0 * PI / nd as f64;

    let term = |idx: usize| -> Complex64 {
        if idx < n * n {
            let (i, j) = (idx / n, idx % n);
            let u = global.0[i];
            let theta = dtheta * (j as f64 + 0.5);
            let z = Complex64::from_polar(((1.0 + u) / (1.0 - u)).sqrt(), theta);
            let keep = 1.0 - disks.iter().map(|d| d.cutoff(z)).sum::<f64>();
            if keep == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            finite(f(z) * (keep * global.1[i] * dtheta / ((1.0 - u) * (1.0 - u))))
        } else {
            let r = idx - n * n;
            let (k, rest) = (r / (nd * nd), r % (nd * nd));
            let (a, b) = (rest / nd, rest % nd);
            let disk = &disks[k];
            let t = 0.5 * (local.0[a] + 1.0);
            let wt = 0.5 * local.1[a];
            let w = Complex64::from_polar(disk.radius * t * t, dphi * (b as f64 + 0.5));
            let z = disk.chart.to_z(w);
            let jac = disk.chart.jacobian(w);
            let weight = bump(t * t) * jac * 2.0 * disk.radius * disk.radius * t * t * t * wt * dphi;
            finite(f(z) * weight)
        }
    };
    let total = n * n + disks.len() * nd * nd;
    let values: Vec<Complex64> = if parallel {
        (0..total).into_par_iter().map(term).collect()
    } else {
        (0..total).map(term).collect()
    };
    pairwise_sum_complex(&values)
}

/// `∫_{|z−center|<radius} f dx dy` in polar coordinates with `r = ρt²`.
pub fn integrate_disk<F>(f: &F, center: Complex64, radius: f64, resolution: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let rule = gauss_legendre(resolution.max(4));
    let m = resolution.max(4);
    let dphi = 2.0 * PI / m as f64;
    let mut values = Vec::with_capacity(rule.0.len() * m);
    for (x, wx) in rule.0.iter().zip(rule.1.iter()) {
        let t = 0.5 * (x + 1.0);
        for b in 0..m {
            let w = Complex64::from_polar(radius * t * t, dphi * (b as f64 + 0.5));
            values.push(f(center + w) * (radius * radius * 2.0 * t * t * t * 0.5 * wx * dphi));
        }
    }
    pairwise_sum_complex(&values)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementStep {
    pub resolution: usize,
    pub value: Complex64,
}

/// A value with an error estimate and the refinement history behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub trace: Vec<RefinementStep>,
}

/// Doubles the resolution from `start` until two successive values differ by
/// at most `tolerance·max(1, |value|)`, or fails past `max`.
pub fn integrate_adaptive<F>(
    f: &F,
    singular: &[SpherePoint],
    start: usize,
    max: usize,
    tolerance: f64,
    parallel: bool,
) -> Result<Estimate, SphereError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let mut trace = vec![RefinementStep { resolution: start, value: integrate_sphere(f, singular, start, parallel) }];
    let mut n = start;
    while n * 2 <= max {
        n *= 2;
        let value = integrate_sphere(f, singular, n, parallel);
        let error = (value - trace.last().unwrap().value).norm();
        trace.push(RefinementStep { resolution: n, value });
        if error <= tolerance * value.norm().max(1.0) {
            return Ok(Estimate { value, error, trace });
        }
    }
    Err(SphereError::Convergence { trace })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Component {
    Uniform,
    /// Density `∝ 1/|w|` on the disk `|w| < radius` of a local chart.
    Radial(Disk),
    Gaussian { center: Complex64, width: f64 },
}

/// Mixture density on the sphere for importance sampling: uniform area, a
/// `1/r` profile around every singular point, and Gaussians around focus points.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceSampler {
    components: Vec<(Component, f64)>,
}

impl ImportanceSampler {
    pub fn new(singular: &[SpherePoint], focus: &[(Complex64, f64)]) -> Self {
        let disks = plan_disks(singular);
        let mut components = vec![(Component::Uniform, 0.25)];
        let (ws, wf) = match (disks.is_empty(), focus.is_empty()) {
            (true, true) => (0.0, 0.0),
            (false, true) => (0.75, 0.0),
            (true, false) => (0.0, 0.75),
            (false, false) => (0.4, 0.35),
        };
        if components.len() == 1 && ws == 0.0 && wf == 0.0 {
            components[0].1 = 1.0;
        }
        for d in &disks {
            components.push((Component::Radial(*d), ws / disks.len() as f64));
        }
        for (c, w) in focus {
            components.push((Component::Gaussian { center: *c, width: *w }, wf / focus.len() as f64));
        }
        ImportanceSampler { components }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Complex64 {
        loop {
            let mut pick: f64 = rng.gen();
            let mut chosen = self.components[0].0;
            for (c, w) in &self.components {
                if pick < *w {
                    chosen = *c;
                    break;
                }
                pick -= w;
            }
            let z = match chosen {
                Component::Uniform => {
                    let u: f64 = rng.gen_range(-1.0..1.0);
                    let theta: f64 = rng.gen_range(0.0..2.0 * PI);
                    Complex64::from_polar(((1.0 + u) / (1.0 - u)).sqrt(), theta)
                }
                Component::Radial(d) => {
                    let r = d.radius * rng.gen::<f64>();
                    let theta: f64 = rng.gen_range(0.0..2.0 * PI);
                    d.chart.to_z(Complex64::from_polar(r, theta))
                }
                Component::Gaussian { center, width } => {
                    let a: f64 = rng.sample(StandardNormal);
                    let b: f64 = rng.sample(StandardNormal);
                    center + Complex64::new(a, b) * (width / 2f64.sqrt())
                }
            };
            if z.re.is_finite() && z.im.is_finite() && self.density(z) > 0.0 {
                return z;
            }
        }
    }

    /// Mixture density with respect to `dx dy`.
    pub fn density(&self, z: Complex64) -> f64 {
        self.components
            .iter()
            .map(|(c, w)| {
                w * match c {
                    Component::Uniform => 1.0 / (PI * (1.0 + z.norm_sqr()).powi(2)),
                    Component::Radial(d) => match d.chart.local(&SpherePoint::Finite(z)) {
                        Some(lw) if lw.norm() < d.radius && lw.norm() > 0.0 => {
                            1.0 / (2.0 * PI * d.radius * lw.norm() * d.chart.jacobian(lw))
                        }
                        _ => 0.0,
                    },
                    Component::Gaussian { center, width } => {
                        (-(z - center).norm_sqr() / (width * width)).exp() / (PI * width * width)
                    }
                }
            })
            .sum()
    }
}
