use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;


use crate::linalg::rref;

use super::cyclic::CyclicChain;
use super::hochschild::{exact_valid, Cochain, CochainKey};
use super::presentation::DgCategory;
use super::structure::AInfinity;
use super::DgCatError;

type Q = BigRational;

/// A pairing `A(X, Y) ⊗ A(Y, X) → ℋ` with `ℋ` one dimensional in degree `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingTarget {
    pub degree: i32,
    /// `⟨x, y⟩` on basis indices; missing entries are zero.
    pub entries: BTreeMap<(usize, usize), Q>,
}

impl PairingTarget {
    pub fn get(&self, x: usize, y: usize) -> Q {
        self.entries.get(&(x, y)).cloned().unwrap_or_else(Q::zero)
    }

    /// Checks types and degrees, `⟨m₁x, y⟩ + (-1)^s(x) ⟨x, m₁y⟩ = 0`, and
    /// nondegeneracy on every pair of opposite Hom spaces.
    pub fn validate(&self, cat: &DgCategory<Q>) -> Result<(), DgCatError> {
        let a = AInfinity::new(cat);
        let basis = cat.basis();
        for (&(x, y), c) in &self.entries {
            let (bx, by) = (&basis[x], &basis[y]);
            if c.is_zero() {
                continue;
            }
            if bx.source != by.target || bx.target != by.source {
                return Err(DgCatError::Pairing(format!("⟨{}, {}⟩ pairs non-opposite Hom spaces", bx.label, by.label)));
            }
            if bx.degree + by.degree != self.degree {
                return Err(DgCatError::Pairing(format!(
                    "⟨{}, {}⟩ has degree {} instead of {}",
                    bx.label,
                    by.label,
                    bx.degree + by.degree,
                    self.degree
                )));
            }
        }
        for x in 0..a.len() {
            for &y in &a.hom[a.target[x]][a.source[x]] {
                let mut sum = Q::zero();
                for (z, c) in &a.m1[x] {
                    sum += c * self.get(*z, y);
                }
                let s = AInfinity::sign(a.shifted[x] as i64);
                for (z, c) in &a.m1[y] {
                    sum += c * &s * self.get(x, *z);
                }
                if !sum.is_zero() {
                    return Err(DgCatError::Pairing(format!(
                        "not a chain map on ({}, {})",
                        basis[x].label, basis[y].label
                    )));
                }
            }
        }
        for s in 0..a.objects {
            for t in 0..a.objects {
                if gram_inverse_solve(self, &a.hom[s][t], &a.hom[t][s], &vec![Q::zero(); a.hom[t][s].len()]).is_none() {
                    return Err(DgCatError::Pairing(format!(
                        "degenerate on Hom({}, {}) ⊗ Hom({}, {})",
                        cat.objects()[s],
                        cat.objects()[t],
                        cat.objects()[t],
                        cat.objects()[s]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The unique `c` with `Σ_u c_u ⟨u, v⟩ = r_v` for every `v`, if the Gram matrix is invertible.
fn gram_inverse_solve(p: &PairingTarget, us: &[usize], vs: &[usize], r: &[Q]) -> Option<Vec<Q>> {
    if us.len() != vs.len() {
        return None;
    }
    let mut m: Vec<Vec<Q>> = vs
        .iter()
        .zip(r)
        .map(|(&v, rv)| {
            let mut row: Vec<Q> = us.iter().map(|&u| p.get(u, v)).collect();
            row.push(rv.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != us.len() || pivots.iter().any(|&c| c >= us.len()) {
        return None;
    }
    Some(m.iter().take(us.len()).map(|row| row[us.len()].clone()).collect())
}

/// A linear functional on cyclic chains of one homological degree, valued in `ℋ`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CyclicFunctional {
    pub degree: i32,
    /// Values on canonical words; other words are determined by the cyclic sign.
    pub values: BTreeMap<CyclicChain, Q>,
}

impl CyclicFunctional {
    pub(crate) fn eval(&self, a: &AInfinity, word: &[usize]) -> Q {
        match a.canonical(word) {
            Some((c, s)) => {
                let v = self.values.get(&c).cloned().unwrap_or_else(Q::zero);
                if s > 0 {
                    v
                } else {
                    -v
                }
            }
            None => Q::zero(),
        }
    }
}

/// Sign `(-1)^(n(n-1)/2)` on the arity-`n` component; it makes dualization
/// commute with the differentials.
pub(crate) fn dualize_sign(n: usize) -> Q {
    AInfinity::sign((n * n.saturating_sub(1) / 2) as i64)
}

/// The Hochschild cochain `F` with `⟨F(x₁, …, xₙ), v⟩ = ±φ((x₁ ⊗ … ⊗ xₙ ⊗ v)_𝒞)`,
/// the sign being `(-1)^(n(n-1)/2)`.
///
/// A functional supported on words of `n + 1` letters gives a cochain of arity `n`.
pub fn pairing_dualize<S: crate::graded::Scalar>(
    cat: &DgCategory<S>,
    functional: &CyclicFunctional,
    pairing: &PairingTarget,
) -> Result<Cochain, DgCatError> {
    let exact = exact_valid(cat)?;
    pairing.validate(&exact)?;
    let a = AInfinity::new(&exact);
    dualize_with(&a, functional, pairing)
}

pub(crate) fn dualize_with(a: &AInfinity, functional: &CyclicFunctional, pairing: &PairingTarget) -> Result<Cochain, DgCatError> {
    let mut prefixes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (w, c) in &functional.values {
        if c.is_zero() {
            continue;
        }
        let found = a.chain_degree(w);
        if found != functional.degree {
            return Err(DgCatError::DegreeMismatch { expected: functional.degree, found });
        }
        for r in 0..w.len() {
            let mut rot = w.clone();
            rot.rotate_left(r);
            rot.pop();
            // the empty prefix is kept with its start object
            let start = a.source[w[r]];
            let mut key = vec![start];
            key.extend(rot);
            prefixes.insert(key);
        }
    }
    let mut out = Vec::new();
    for key in prefixes {
        let (start, word) = (key[0], &key[1..]);
        let end = word.last().map_or(start, |&x| a.target[x]);
        let (us, vs) = (&a.hom[start][end], &a.hom[end][start]);
        let r: Vec<Q> = vs
            .iter()
            .map(|&v| {
                let mut full = word.to_vec();
                full.push(v);
                functional.eval(a, &full)
            })
            .collect();
        let c = gram_inverse_solve(pairing, us, vs, &r)
            .ok_or_else(|| DgCatError::Pairing("degenerate Gram matrix".into()))?;
        let s = dualize_sign(word.len());
        for (&u, cu) in us.iter().zip(c) {
            if !cu.is_zero() {
                out.push((CochainKey { start, word: word.to_vec(), output: u }, cu * &s));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}
