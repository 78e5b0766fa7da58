use num_complex::Complex64;
use smallvec::SmallVec;

use super::exterior::Ext;
use super::{CorrelatorError, CorrelatorSpec, Decoration};
use crate::graded::parity_sign;
use crate::sphere::{Function, GreenKernel, SmoothForm, SpherePoint, DC_CONSTANT};
use crate::trees::PlaneTree;

/// Change of the Green kernel used by the gauge check:
/// `G + ε·(η(x) + η(y)) + constant`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Perturbation {
    pub eta: Option<Function>,
    pub epsilon: f64,
    pub constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum End {
    Free(usize),
    Pinned(SpherePoint),
}

/// Top-degree density of one tree on `X^{free vertices}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeIntegrand {
    pub sign: f64,
    /// Product of the delta coefficients, constants and smooth functions evaluated
    /// at pinned vertices.
    pub coefficient: Complex64,
    pub free: usize,
    /// Smooth decorations at free vertices, in clockwise side order.
    pub forms: Vec<(usize, SmoothForm)>,
    /// `(x−, x+)` for each internal edge in canonical order.
    pub greens: Vec<(End, End)>,
    pub kernel: GreenKernel,
    pub perturbation: Perturbation,
    /// Points where the density may be singular, besides coinciding free vertices.
    pub singular: Vec<SpherePoint>,
    pub focus: Vec<(Complex64, f64)>,
    /// Set when the tree contributes exactly zero (degree overflow at a vertex).
    pub zero: bool,
}

/// `ε(T, W)`: the sign of the depth-first edge order times `(−1)^{Σ i·|α_i|}`.
pub fn tree_sign(tree: &PlaneTree, degrees: &[u8]) -> f64 {
    let weight: i64 = degrees.iter().enumerate().map(|(i, d)| i as i64 * *d as i64).sum();
    f64::from(tree.orientation_sign() * parity_sign(weight))
}

/// Rank-one trace at a vertex: the product of its scalar factors.
pub fn trace_contract(factors: &[Complex64]) -> Complex64 {
    factors.iter().product()
}

/// The ξ-operator on evaluated factors: `φ_j` of shifted degree `s_j`, with
/// `D^ℂφ_j` given separately.
///
/// `(1/k!) Σ_σ ±φ_{σ(0)} ∧ D^ℂφ_{σ(1)} ∧ … ∧ D^ℂφ_{σ(k−1)}` with the Koszul sign of
/// `σ` in shifted degrees. The empty list gives the unit.
pub fn xi(values: &[Ext], dc_values: &[Ext], shifted: &[i32], free: usize) -> Ext {
    let k = values.len();
    if k == 0 {
        return Ext::scalar(free, 1.0.into());
    }
    let mut total = Ext::scalar(free, 0.0.into());
    let mut perm: Vec<usize> = (0..k).collect();
    let mut count = 0u64;
    permute(&mut perm, 0, &mut |p| {
        count += 1;
        let sign = crate::graded::koszul_sign(p, shifted).expect("permutation");
        let mut term = values[p[0]].clone();
        for &j in &p[1..] {
            term = term.wedge(&dc_values[j]);
        }
        term.scale(f64::from(sign).into());
        total.add_assign(&term);
    });
    total.scale((1.0 / count as f64).into());
    total
}

/// [`xi`] when every factor is odd: `(1/k) Σ_j (−1)^j φ_j ∧ ⋀_{i≠j} D^ℂφ_i`.
pub fn xi_odd(values: &[Ext], dc_values: &[Ext], free: usize) -> Ext {
    let k = values.len();
    match k {
        0 => Ext::scalar(free, 1.0.into()),
        1 => values[0].clone(),
        _ => {
            let mut total = Ext::scalar(free, 0.0.into());
            for j in 0..k {
                let mut term = values[j].clone();
                for (i, d) in dc_values.iter().enumerate() {
                    if i != j {
                        term = term.wedge(d);
                    }
                }
                term.scale(if j % 2 == 0 { (1.0 / k as f64).into() } else { (-1.0 / k as f64).into() });
                total.add_assign(&term);
            }
            total
        }
    }
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

impl TreeIntegrand {
    pub fn build(tree: &PlaneTree, spec: &CorrelatorSpec, perturbation: &Perturbation) -> Result<Self, CorrelatorError> {
        let v = tree.internal_vertices();
        let mut pinned: Vec<Option<SpherePoint>> = vec![None; v];
        let mut coefficient = Complex64::new(1.0, 0.0);
        let mut zero = false;
        let vertex_of = |side: usize| tree.edges[side].ends[0];
        for (side, d) in spec.decorations.iter().enumerate() {
            match d {
                Decoration::Constant(c) => coefficient *= c,
                Decoration::Delta { point, coefficient: c } => {
                    let t = vertex_of(side);
                    if pinned[t].is_some() {
                        zero = true;
                    }
                    pinned[t] = Some(*point);
                    coefficient *= c;
                }
                Decoration::Smooth(_) => {}
            }
        }
        let mut slots = vec![usize::MAX; v];
        let mut free = 0;
        for t in 0..v {
            if pinned[t].is_none() {
                slots[t] = free;
                free += 1;
            }
        }
        let mut forms = Vec::new();
        let mut singular = vec![spec.base];
        let mut focus = Vec::new();
        for (side, d) in spec.decorations.iter().enumerate() {
            if let Decoration::Smooth(form) = d {
                let t = vertex_of(side);
                match (pinned[t], form) {
                    (Some(p), SmoothForm::Function(f)) => {
                        coefficient *= f.value_at(&p).ok_or_else(|| {
                            CorrelatorError::Invalid(format!("smooth decoration on side {side} is singular at {p:?}"))
                        })?;
                    }
                    (Some(_), _) => zero = true,
                    (None, _) => {
                        singular.extend(form.singular_points());
                        focus.extend(form.focus());
                        forms.push((slots[t], form.clone()));
                    }
                }
            }
        }
        let mut load = vec![0u8; v];
        for (side, d) in spec.decorations.iter().enumerate() {
            if let Decoration::Smooth(form) = d {
                load[vertex_of(side)] += form.degree();
            }
        }
        if load.iter().any(|&d| d > 2) {
            zero = true;
        }
        let end = |t: usize| match pinned[t] {
            Some(p) => End::Pinned(p),
            None => End::Free(slots[t]),
        };
        let mut greens = Vec::new();
        for e in tree.internal_edges() {
            let (lo, hi) = tree.edge_endpoint_order(e)?;
            greens.push((end(lo), end(hi)));
        }
        singular.extend(pinned.iter().flatten().copied());
        if let Some(eta) = &perturbation.eta {
            singular.extend(eta.singular_points());
        }
        let degrees: Vec<u8> = spec.decorations.iter().map(Decoration::degree).collect();
        Ok(TreeIntegrand {
            sign: tree_sign(tree, &degrees),
            coefficient,
            free,
            forms,
            greens,
            kernel: GreenKernel::new(spec.base),
            perturbation: perturbation.clone(),
            singular,
            focus,
            zero,
        })
    }

    pub fn reversed(&self) -> Self {
        let mut r = self.clone();
        for g in &mut r.greens {
            *g = (g.1, g.0);
        }
        r
    }

    fn point(&self, e: End, zs: &[Complex64]) -> SpherePoint {
        match e {
            End::Free(s) => SpherePoint::Finite(zs[s]),
            End::Pinned(p) => p,
        }
    }

    fn green(&self, x: &SpherePoint, y: &SpherePoint) -> Option<f64> {
        let mut g = self.kernel.eval(x, y).ok()?;
        let p = &self.perturbation;
        if let Some(eta) = &p.eta {
            g += p.epsilon * (eta.value_at(x)?.re + eta.value_at(y)?.re);
        }
        Some(g + p.constant)
    }

    /// `∂G/∂x` at a free `x`.
    fn green_dz(&self, x: Complex64, y: &SpherePoint) -> Complex64 {
        let mut d = self.kernel.dz_first(x, y);
        if let Some(eta) = &self.perturbation.eta {
            d += eta.jet(x).dz * self.perturbation.epsilon;
        }
        d
    }

    /// Density with respect to `Π dx_s dy_s` at free coordinates `zs`; zero on
    /// singular configurations.
    pub fn density(&self, zs: &[Complex64]) -> Complex64 {
        if self.zero {
            return 0.0.into();
        }
        let f = self.free;
        let mut scalar = self.coefficient * self.sign;
        let mut acc: Option<Ext> = None;
        for (slot, form) in &self.forms {
            let v = form.eval(zs[*slot]);
            let e = match v.degree {
                0 => {
                    scalar *= v.value;
                    continue;
                }
                1 => Ext::one_form(f, *slot, v.dz, v.dzb),
                _ => Ext::two_form(f, *slot, v.top),
            };
            acc = Some(match acc {
                None => e,
                Some(a) => a.wedge(&e),
            });
        }
        let mut values: SmallVec<[Complex64; 4]> = SmallVec::new();
        let mut dcs: SmallVec<[Ext; 4]> = SmallVec::new();
        for (lo, hi) in &self.greens {
            let (x, y) = (self.point(*lo, zs), self.point(*hi, zs));
            let Some(g) = self.green(&x, &y) else { return 0.0.into() };
            values.push(g.into());
            let mut d = Ext::scalar(f, 0.0.into());
            for (here, there) in [(*lo, y), (*hi, x)] {
                if let End::Free(s) = here {
                    let dz = self.green_dz(zs[s], &there);
                    d.add_assign(&Ext::one_form(f, s, dz * DC_CONSTANT, -dz.conj() * DC_CONSTANT));
                }
            }
            dcs.push(d);
        }
        let acc = acc.unwrap_or_else(|| Ext::scalar(f, 1.0.into()));
        let top = scalar
            * match values.len() {
                0 => acc.top(),
                1 => values[0] * acc.top(),
                k => {
                    let mut total = Complex64::new(0.0, 0.0);
                    for j in 0..k {
                        let mut term = acc.clone();
                        for (i, d) in dcs.iter().enumerate() {
                            if i != j {
                                term = term.wedge(d);
                            }
                        }
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        total += term.top() * values[j] * sign;
                    }
                    total / k as f64
                }
            };
        // Π dz_s∧dz̄_s = (−2i)^F Π dx_s∧dy_s
        let v = top * Complex64::new(0.0, -2.0).powu(f as u32);
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            0.0.into()
        }
    }
}
