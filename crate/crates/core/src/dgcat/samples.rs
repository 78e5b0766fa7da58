//! Small dg categories used by tests, the self test and the CLI.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::presentation::{DgCategory, DgCategoryBuilder};
use super::validate::validate;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// One object, `End = ℚ` in degree 0.
pub fn point() -> DgCategory<Q> {
    let mut b = DgCategory::builder();
    b.object("pt").unwrap();
    b.basis_element("pt", "pt", "1", 0).unwrap();
    b.composition("pt", "pt", "pt", "1", "1", "1", q(1)).unwrap();
    b.identity("pt", "1", q(1)).unwrap();
    b.build().unwrap()
}

/// One object with `End = M_n(ℚ)` spanned by matrix units `e{i}{j}`.
pub fn matrix_algebra(n: usize) -> DgCategory<Q> {
    let mut b = DgCategory::builder();
    b.object("X").unwrap();
    let unit = |i: usize, j: usize| format!("e{i}{j}");
    for i in 0..n {
        for j in 0..n {
            b.basis_element("X", "X", &unit(i, j), 0).unwrap();
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                b.composition("X", "X", "X", &unit(i, j), &unit(j, k), &unit(i, k), q(1)).unwrap();
            }
        }
        b.identity("X", &unit(i, i), q(1)).unwrap();
    }
    b.build().unwrap()
}

/// Disjoint union of two copies of [`point`].
pub fn two_points() -> DgCategory<Q> {
    let mut b = DgCategory::builder();
    for o in ["p", "q"] {
        b.object(o).unwrap();
        b.basis_element(o, o, "1", 0).unwrap();
        b.composition(o, o, o, "1", "1", "1", q(1)).unwrap();
        b.identity(o, "1", q(1)).unwrap();
    }
    b.build().unwrap()
}

/// `H•(ℙ¹) = ℚ[ε]/ε²` with `|ε| = 2`: the endomorphisms of the trivial rank-one
/// bundle on the sphere.
pub fn sphere_cohomology() -> DgCategory<Q> {
    let mut b = DgCategory::builder();
    b.object("O").unwrap();
    b.basis_element("O", "O", "1", 0).unwrap();
    b.basis_element("O", "O", "eps", 2).unwrap();
    b.composition("O", "O", "O", "1", "1", "1", q(1)).unwrap();
    b.composition("O", "O", "O", "1", "eps", "eps", q(1)).unwrap();
    b.composition("O", "O", "O", "eps", "1", "eps", q(1)).unwrap();
    b.identity("O", "1", q(1)).unwrap();
    b.build().unwrap()
}

/// `k` mutually isomorphic objects with every Hom one dimensional.
pub fn indiscrete(k: usize) -> DgCategory<Q> {
    let mut b = DgCategory::builder();
    let names: Vec<String> = (0..k).map(|i| format!("X{i}")).collect();
    for n in &names {
        b.object(n).unwrap();
    }
    for s in &names {
        for t in &names {
            b.basis_element(s, t, "u", 0).unwrap();
        }
    }
    for x in &names {
        for y in &names {
            for z in &names {
                b.composition(x, y, z, "u", "u", "u", q(1)).unwrap();
            }
        }
        b.identity(x, "u", q(1)).unwrap();
    }
    b.build().unwrap()
}

/// Random dg category with at most 3 objects, Hom dimensions at most 3 and
/// basis degrees in `[0, 2]`. The result always passes [`validate`].
pub fn random_valid<R: Rng>(rng: &mut R) -> DgCategory<Q> {
    let cat = match rng.gen_range(0..3) {
        0 => random_square_zero(rng),
        1 => random_path(rng),
        _ => indiscrete(rng.gen_range(1..=3)),
    };
    debug_assert!(validate(&cat).is_valid());
    cat
}

/// Identities plus a radical whose products all vanish, with a random differential
/// pairing radical vectors of adjacent degrees.
fn random_square_zero<R: Rng>(rng: &mut R) -> DgCategory<Q> {
    let k = rng.gen_range(1..=3);
    let names: Vec<String> = (0..k).map(|i| format!("X{i}")).collect();
    let mut b: DgCategoryBuilder<Q> = DgCategory::builder();
    for n in &names {
        b.object(n).unwrap();
    }
    for (i, s) in names.iter().enumerate() {
        for (j, t) in names.iter().enumerate() {
            let cap = if i == j { 2 } else { 3 };
            if i == j {
                b.basis_element(s, t, "id", 0).unwrap();
            }
            let mut degrees: Vec<i32> = (0..rng.gen_range(0..=cap)).map(|_| rng.gen_range(0..=2)).collect();
            degrees.sort_unstable();
            let labels: Vec<String> = (0..degrees.len()).map(|r| format!("r{r}")).collect();
            for (l, d) in labels.iter().zip(&degrees) {
                b.basis_element(s, t, l, *d).unwrap();
            }
            // pair each vector with at most one vector one degree up
            let mut used = vec![false; degrees.len()];
            for a in 0..degrees.len() {
                if used[a] || !rng.gen_bool(0.6) {
                    continue;
                }
                if let Some(c) = (0..degrees.len()).find(|&c| !used[c] && c != a && degrees[c] == degrees[a] + 1) {
                    used[a] = true;
                    used[c] = true;
                    let coeff = q(*[1, -1, 2, 3].choose(rng).unwrap());
                    b.differential(s, t, &labels[a], &labels[c], coeff).unwrap();
                }
            }
        }
    }
    for n in &names {
        b.identity(n, "id", q(1)).unwrap();
    }
    add_identity_compositions(&mut b, &names);
    b.build().unwrap()
}

/// Objects `0 < 1 < 2` with arrows `a: 0→1`, `b: 1→2`, direct arrows `c: 0→2`,
/// composites `a·b`, and `d(c) = λ·a·b` when degrees allow.
fn random_path<R: Rng>(rng: &mut R) -> DgCategory<Q> {
    let names: Vec<String> = (0..3).map(|i| format!("X{i}")).collect();
    let mut b: DgCategoryBuilder<Q> = DgCategory::builder();
    for n in &names {
        b.object(n).unwrap();
        b.basis_element(n, n, "id", 0).unwrap();
    }
    let p = rng.gen_range(1..=2);
    let qn = if p == 2 { 1 } else { rng.gen_range(1..=2) };
    let a_deg: Vec<i32> = (0..p).map(|_| rng.gen_range(0..=1)).collect();
    let b_deg: Vec<i32> = (0..qn).map(|_| rng.gen_range(0..=1)).collect();
    for (i, d) in a_deg.iter().enumerate() {
        b.basis_element("X0", "X1", &format!("a{i}"), *d).unwrap();
    }
    for (j, d) in b_deg.iter().enumerate() {
        b.basis_element("X1", "X2", &format!("b{j}"), *d).unwrap();
    }
    let mut composites = Vec::new();
    for (i, da) in a_deg.iter().enumerate() {
        for (j, db) in b_deg.iter().enumerate() {
            let label = format!("a{i}b{j}");
            b.basis_element("X0", "X2", &label, da + db).unwrap();
            composites.push((label, da + db, i, j));
        }
    }
    let direct = 3 - composites.len();
    let mut direct_labels = Vec::new();
    for r in 0..rng.gen_range(0..=direct) {
        let d = rng.gen_range(0..=1);
        let label = format!("c{r}");
        b.basis_element("X0", "X2", &label, d).unwrap();
        direct_labels.push((label, d));
    }
    for (label, d) in &direct_labels {
        if let Some((target, ..)) = composites.iter().find(|(_, dd, ..)| *dd == d + 1) {
            if rng.gen_bool(0.7) {
                b.differential("X0", "X2", label, target, q(rng.gen_range(1..=3))).unwrap();
            }
        }
    }
    for (label, _, i, j) in &composites {
        b.composition("X0", "X1", "X2", &format!("a{i}"), &format!("b{j}"), label, q(1)).unwrap();
    }
    for n in &names {
        b.identity(n, "id", q(1)).unwrap();
    }
    add_identity_compositions(&mut b, &names);
    b.build().unwrap()
}

/// Adds `id·f = f = f·id` for every basis vector `f` already declared.
fn add_identity_compositions(b: &mut DgCategoryBuilder<Q>, names: &[String]) {
    let labels: Vec<(String, String, String)> = b.basis_labels();
    for (s, t, l) in labels {
        b.composition(&s, &s, &t, "id", &l, &l, q(1)).unwrap();
        if s != t || l != "id" {
            b.composition(&s, &t, &t, &l, "id", &l, q(1)).unwrap();
        }
    }
    let _ = names;
}
