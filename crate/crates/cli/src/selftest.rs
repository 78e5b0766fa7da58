//! The invariant suite behind `hodgecor selftest`.

use std::time::Instant;

use hodgecor_core::correlator::suite::regression_suite;
use hodgecor_core::correlator::{
    cyclic_invariance_check, evaluate, evaluate_with_workers, gauge_perturbation_check, selection_rule, CorrelatorSpec,
    Decoration, Method, Perturbation, TreeIntegrand,
};
use hodgecor_core::dgcat::{cyclic_complex, cyclic_homology, hochschild_cohomology, samples, HochschildComplex};
use hodgecor_core::sphere::{Function, SpherePoint};
use hodgecor_core::trees::{catalan, enumerate_trees, DecoratedPolygon};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::green::green_check;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn check(name: &str, f: impl FnOnce() -> Result<String, String>) -> Check {
    let t = Instant::now();
    let (pass, detail) = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(_) => (false, "panicked".into()),
    };
    Check { name: name.into(), pass, detail, seconds: t.elapsed().as_secs_f64() }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs every property; `full` uses the acceptance-size workloads.
pub fn selftest(full: bool) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("tree counts are Catalan numbers", || {
        for n in 3..=7 {
            let k = enumerate_trees(&DecoratedPolygon::uniform(n, "O")).map_err(e2s)?.len() as u64;
            ensure(k == catalan(n - 2), || format!("{n}-gon: {k} trees"))?;
        }
        Ok("1, 2, 5, 14, 42".into())
    }));
    out.push(check("Hochschild cohomology of point, M2(Q), two points", || {
        let cats = [("point", samples::point(), 1), ("M2", samples::matrix_algebra(2), 1), ("two points", samples::two_points(), 2)];
        for (name, cat, hh0) in cats {
            let t = hochschild_cohomology(&cat, 4, (0, 2)).map_err(e2s)?;
            let d: Vec<usize> = (0..=2).map(|i| t.dims[&i]).collect();
            ensure(d == [hh0, 0, 0] && t.stable, || format!("{name}: {d:?}, stable {}", t.stable))?;
        }
        Ok("HH⁰ = 1, 1, 2; HH¹ = HH² = 0".into())
    }));
    out.push(check("total differentials square to zero", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let count = if full { 50 } else { 10 };
        for i in 0..count {
            let cat = samples::random_valid(&mut rng);
            let h = HochschildComplex::new(&cat, 3).map_err(e2s)?;
            let c = cyclic_complex(&cat, 3).map_err(e2s)?;
            ensure(h.square_zero() && c.square_zero(), || format!("category {i}"))?;
        }
        Ok(format!("{count} random categories"))
    }));
    out.push(check("cyclic homology of the point", || {
        let t = cyclic_homology(&samples::point(), 4, (0, 2)).map_err(e2s)?;
        let d: Vec<usize> = (0..=2).map(|i| t.dims[&i]).collect();
        ensure(d == [1, 0, 1], || format!("{d:?}"))?;
        Ok("HC₀ = 1, HC₁ = 0, HC₂ = 1".into())
    }));
    out.push(check("Green kernel certification", || {
        let (res, n) = if full { (256, 20) } else { (128, 5) };
        let v = green_check(res, n, 1).map_err(e2s)?;
        let ok = v["residual_pass"] == true && v["control"]["pass"] == true && v["symmetry"]["pass"] == true;
        let detail = format!(
            "max residual {} at {res}², control {}, asymmetry {}",
            v["max_residual"]["value"], v["control"]["residual"]["value"], v["symmetry"]["max_asymmetry"]["value"]
        );
        ensure(ok, || detail.clone())?;
        Ok(detail)
    }));
    out.push(check("degree rule gives exact zeros", || {
        let one = Decoration::one;
        let pts = [(0.3, 0.0), (-0.2, 0.5), (0.9, -0.4), (-1.3, -0.6), (0.1, 1.7), (2.0, 0.2)];
        let mut checked = 0;
        for n in 3..=6usize {
            for mask in 0..(1usize << n) {
                let decorations: Vec<Decoration> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { Decoration::delta(SpherePoint::new(pts[i].0, pts[i].1)) } else { one() })
                    .collect();
                let degrees: Vec<u8> = decorations.iter().map(Decoration::degree).collect();
                if selection_rule(&degrees) {
                    continue;
                }
                let e = evaluate(&CorrelatorSpec::new(decorations, SpherePoint::Infinity)).map_err(e2s)?;
                ensure(e.value == Complex64::new(0.0, 0.0) && e.work() == 0, || format!("pattern {mask:b}: {}", e.value))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} patterns"))
    }));
    out.push(check("triangle closed form", || {
        let c = Complex64::new(2.5, -1.0);
        let d = Decoration::Delta { point: SpherePoint::new(0.3, 0.4), coefficient: c };
        let e = evaluate(&CorrelatorSpec::new(vec![Decoration::one(), Decoration::one(), d], SpherePoint::Infinity)).map_err(e2s)?;
        ensure(e.value == c, || format!("{}", e.value))?;
        Ok(format!("{}", e.value))
    }));
    out.push(check("cyclic invariance on the regression suite", || {
        let mut worst: f64 = 0.0;
        for (name, spec) in regression_suite() {
            let r = cyclic_invariance_check(&spec).map_err(e2s)?;
            worst = worst.max(r.max_deviation);
            ensure(r.max_deviation < 1e-3, || format!("{name}: {:e}", r.max_deviation))?;
            if let [.., a, b] = r.trend[..] {
                ensure(b <= a.max(1e-12), || format!("{name}: trend {:?}", r.trend))?;
            }
        }
        Ok(format!("max deviation {worst:e}"))
    }));
    out.push(check("gauge robustness", || {
        let eta = Perturbation {
            eta: Some(Function::Gaussian { center: Complex64::new(0.2, -0.1), width: 0.4, amplitude: 1.0.into() }),
            epsilon: 1e-3,
            constant: 0.0,
        };
        let constant = Perturbation { constant: 0.5, ..Perturbation::default() };
        let mut worst: f64 = 0.0;
        for (name, spec) in regression_suite() {
            if spec.decorations.len() != 4 {
                continue;
            }
            if spec.cocycle {
                let r = gauge_perturbation_check(&spec, &eta).map_err(e2s)?;
                ensure(r.deviation < 1e-2, || format!("{name}: {:e}", r.deviation))?;
            }
            if name == "square_two_bumps" && !full {
                continue;
            }
            let r = gauge_perturbation_check(&spec, &constant).map_err(e2s)?;
            let mut predicted = Complex64::new(0.0, 0.0);
            for tree in enumerate_trees(&spec.polygon()).map_err(e2s)? {
                let f = TreeIntegrand::build(&tree, &spec, &Perturbation::default()).map_err(e2s)?;
                if !f.zero {
                    predicted += f.coefficient * f.sign * constant.constant * smooth_mass(&spec);
                }
            }
            let miss = ((r.perturbed - r.reference) - predicted).norm();
            worst = worst.max(miss);
            ensure(miss < 1e-3, || format!("{name}: harmonic control off by {miss:e}"))?;
        }
        Ok(format!("harmonic control max miss {worst:e}"))
    }));
    out.push(check("quadrature and Monte Carlo agree, runs reproduce", || {
        for (name, spec) in regression_suite() {
            if name == "square_two_bumps" && !full {
                continue;
            }
            let q = evaluate(&spec).map_err(e2s)?;
            let mut s = spec.clone();
            s.method = Method::MonteCarlo;
            let m = evaluate(&s).map_err(e2s)?;
            let diff = (q.value - m.value).norm();
            ensure(diff <= 3.0 * (q.error + m.error), || format!("{name}: |Δ| = {diff:e}, errors {:e} + {:e}", q.error, m.error))?;
        }
        let (_, mut s) = regression_suite().into_iter().find(|(n, _)| *n == "square_bump_delta").expect("suite spec");
        s.method = Method::MonteCarlo;
        s.seed = 11;
        let runs: Vec<_> = [1, 2, 8].iter().map(|&w| evaluate_with_workers(&s, w)).collect::<Result<_, _>>().map_err(e2s)?;
        ensure(runs.iter().all(|r| r == &runs[0]), || "worker counts disagree".into())?;
        Ok("within 3× combined error; bitwise equal for 1, 2, 8 workers".into())
    }));
    out
}

/// Product of the masses of the smooth densities in a word (1 without any).
pub fn smooth_mass(spec: &CorrelatorSpec) -> Complex64 {
    spec.decorations
        .iter()
        .map(|d| match d {
            Decoration::Smooth(hodgecor_core::sphere::SmoothForm::Density { mass, .. }) => *mass,
            _ => Complex64::new(1.0, 0.0),
        })
        .product()
}
