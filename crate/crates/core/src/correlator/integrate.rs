use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use smallvec::SmallVec;

use super::integrand::TreeIntegrand;
use super::{IntegrationParams, Method};
use crate::reduce::pairwise_sum_complex;
use crate::sphere::quadrature::{integrate_sphere, quadrature_nodes, ImportanceSampler, RefinementStep};
use crate::sphere::{SphereError, SpherePoint};

/// Value of one tree integral with its error estimate and the work spent.
#[derive(Debug, Clone, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    /// Number of density evaluations.
    pub work: u64,
    pub trace: Vec<RefinementStep>,
}

type Config = SmallVec<[Complex64; 4]>;

fn nested(f: &TreeIntegrand, zs: &Config, resolution: usize, work: &AtomicU64) -> Complex64 {
    let mut singular = f.singular.clone();
    singular.extend(zs.iter().map(|z| SpherePoint::Finite(*z)));
    let outer = zs.is_empty();
    let last = zs.len() + 1 == f.free;
    let g = |z: Complex64| {
        let mut inner = zs.clone();
        inner.push(z);
        if last {
            f.density(&inner)
        } else {
            nested(f, &inner, resolution, work)
        }
    };
    let v = integrate_sphere(&g, &singular, resolution, outer);
    if last {
        work.fetch_add(quadrature_nodes(&singular, resolution), Ordering::Relaxed);
    }
    v
}

/// Nested quadrature at one resolution.
pub fn quadrature(f: &TreeIntegrand, resolution: usize) -> (Complex64, u64) {
    let work = AtomicU64::new(0);
    let v = nested(f, &Config::new(), resolution, &work);
    (v, work.into_inner())
}

fn batch_seed(seed: u64, tree: usize, batch: usize) -> u64 {
    // splitmix64 over the three inputs
    let mut x = seed ^ (tree as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (batch as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Importance-sampled estimate; vertices are drawn one after the other with
/// the earlier ones added to the singular set.
pub fn monte_carlo(f: &TreeIntegrand, samples: usize, batches: usize, seed: u64, tree: usize) -> (Complex64, f64) {
    let batches = batches.max(2);
    let per = samples.div_ceil(batches).max(1);
    let base = ImportanceSampler::new(&f.singular, &f.focus);
    let means: Vec<Complex64> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(batch_seed(seed, tree, b));
            let mut values = Vec::with_capacity(per);
            let mut zs = Vec::with_capacity(f.free);
            for _ in 0..per {
                zs.clear();
                let mut weight = 1.0;
                for s in 0..f.free {
                    let z = if s == 0 {
                        let z = base.sample(&mut rng);
                        weight *= base.density(z);
                        z
                    } else {
                        let mut singular = f.singular.clone();
                        singular.extend(zs.iter().map(|z| SpherePoint::Finite(*z)));
                        let sampler = ImportanceSampler::new(&singular, &f.focus);
                        let z = sampler.sample(&mut rng);
                        weight *= sampler.density(z);
                        z
                    };
                    zs.push(z);
                }
                values.push(f.density(&zs) / weight);
            }
            pairwise_sum_complex(&values) / per as f64
        })
        .collect();
    let mean = pairwise_sum_complex(&means) / batches as f64;
    let var: f64 = means.iter().map(|m| (m - mean).norm_sqr()).sum::<f64>() / (batches as f64 - 1.0);
    (mean, (var / batches as f64).sqrt())
}

/// Integrates one tree. Symbolic, with no work counted, when every vertex is
/// pinned by a delta. Quadrature needs at least one refinement step to
/// produce an error estimate.
pub fn integrate(f: &TreeIntegrand, method: Method, params: &IntegrationParams, seed: u64, tree: usize) -> Result<Integral, SphereError> {
    if f.zero {
        return Ok(Integral { value: 0.0.into(), error: 0.0, work: 0, trace: Vec::new() });
    }
    if f.free == 0 {
        return Ok(Integral { value: f.density(&[]), error: 0.0, work: 0, trace: Vec::new() });
    }
    match method {
        Method::Quadrature => {
            let mut n = params.resolution;
            let (first, mut work) = quadrature(f, n);
            let mut trace = vec![RefinementStep { resolution: n, value: first }];
            while n * 2 <= params.max_resolution {
                n *= 2;
                let (value, w) = quadrature(f, n);
                work += w;
                let error = (value - trace.last().unwrap().value).norm();
                trace.push(RefinementStep { resolution: n, value });
                if error <= params.tolerance * value.norm().max(1.0) {
                    return Ok(Integral { value, error, work, trace });
                }
            }
            Err(SphereError::Convergence { trace })
        }
        Method::MonteCarlo => {
            let (value, error) = monte_carlo(f, params.samples, params.batches, seed, tree);
            let per = params.samples.div_ceil(params.batches.max(2)).max(1);
            Ok(Integral { value, error, work: (per * params.batches.max(2)) as u64, trace: Vec::new() })
        }
    }
}
