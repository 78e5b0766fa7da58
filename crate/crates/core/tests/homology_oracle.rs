//! Brute-force oracle for Hochschild cohomology and cyclic homology of
//! categories concentrated in degree 0 with zero differential.
//!
//! Written against the classical formulas for algebras, independently of the
//! shifted-sign machinery in the library: cochains are dense arrays indexed by
//! composable words, cyclic coinvariants are computed as the quotient by the
//! image of `1 - t`, ranks come from a plain dense Gaussian elimination.

use std::collections::HashMap;

use hodgecor_core::dgcat::samples::{matrix_algebra, point, two_points};
use hodgecor_core::dgcat::{cyclic_homology, hochschild_cohomology, DgCategory};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let t = &rows[r][j] * &f;
                rows[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

struct Plain {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    product: HashMap<(usize, usize), Vec<(usize, Q)>>,
}

impl Plain {
    fn new(cat: &DgCategory<Q>) -> Self {
        assert!(cat.basis().iter().all(|b| b.degree == 0));
        let n = cat.basis().len();
        let mut product = HashMap::new();
        for f in 0..n {
            for g in 0..n {
                let terms = cat.compose(f, g).to_vec();
                if !terms.is_empty() {
                    product.insert((f, g), terms);
                }
            }
        }
        Plain {
            objects: cat.objects().len(),
            source: cat.basis().iter().map(|b| b.source).collect(),
            target: cat.basis().iter().map(|b| b.target).collect(),
            product,
        }
    }

    fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&i| self.source[i] == x && self.target[i] == y).collect()
    }

    fn mul(&self, f: usize, g: usize) -> &[(usize, Q)] {
        self.product.get(&(f, g)).map_or(&[], Vec::as_slice)
    }

    /// `(start, word)` for every composable word of length `n`.
    fn words(&self, n: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = (0..self.objects).map(|x| (x, Vec::new())).collect();
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|(s, w)| {
                    let end = w.last().map_or(s, |&x| self.target[x]);
                    (0..self.source.len()).filter(move |&e| self.source[e] == end).map(move |e| {
                        let mut w2 = w.clone();
                        w2.push(e);
                        (s, w2)
                    })
                })
                .collect();
        }
        out
    }

    /// Basis of `C^n`: pairs (word, output).
    fn cochains(&self, n: usize) -> Vec<(usize, Vec<usize>, usize)> {
        self.words(n)
            .into_iter()
            .flat_map(|(s, w)| {
                let end = w.last().map_or(s, |&x| self.target[x]);
                self.hom(s, end).into_iter().map(move |o| (s, w.clone(), o))
            })
            .collect()
    }

    /// Classical `δf(a₁…aₙ₊₁) = a₁f(a₂…) + Σ(-1)^i f(…aᵢaᵢ₊₁…) + (-1)^(n+1) f(a₁…aₙ)aₙ₊₁`
    /// as a matrix with rows `C^(n+1)` and columns `C^n`.
    fn coboundary(&self, n: usize) -> Vec<Vec<Q>> {
        let cols = self.cochains(n);
        let rows = self.cochains(n + 1);
        let col_index: HashMap<_, _> = cols.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = vec![vec![Q::zero(); cols.len()]; rows.len()];
        for (r, (s, w, o)) in rows.iter().enumerate() {
            // coefficient of output o in δf(w) for basis cochain f = (word', out')
            // a₁ · f(a₂…): f's output u with a₁u ∋ o
            let mid = self.target[w[0]];
            for u in self.hom(mid, self.target[*w.last().unwrap()]) {
                for (h, c) in self.mul(w[0], u) {
                    if h == o {
                        if let Some(&ci) = col_index.get(&(mid, w[1..].to_vec(), u)) {
                            m[r][ci] += c;
                        }
                    }
                }
            }
            for i in 0..n {
                for (h, c) in self.mul(w[i], w[i + 1]) {
                    let mut w2 = w[..i].to_vec();
                    w2.push(*h);
                    w2.extend_from_slice(&w[i + 2..]);
                    if let Some(&ci) = col_index.get(&(*s, w2, *o)) {
                        let sign = if (i + 1) % 2 == 0 { Q::one() } else { -Q::one() };
                        m[r][ci] += c * sign;
                    }
                }
            }
            let before = if n == 0 { *s } else { self.target[w[n - 1]] };
            for u in self.hom(*s, before) {
                for (h, c) in self.mul(u, w[n]) {
                    if h == o {
                        if let Some(&ci) = col_index.get(&(*s, w[..n].to_vec(), u)) {
                            let sign = if (n + 1) % 2 == 0 { Q::one() } else { -Q::one() };
                            m[r][ci] += c * sign;
                        }
                    }
                }
            }
        }
        m
    }

    fn hh(&self, n: usize) -> usize {
        let dim = self.cochains(n).len();
        let out = rank(self.coboundary(n));
        let inc = if n == 0 { 0 } else { rank(self.coboundary(n - 1)) };
        dim - out - inc
    }

    /// Cyclic words `a₀ ⊗ … ⊗ aₙ` (composable around the circle).
    fn cyclic(&self, n: usize) -> Vec<Vec<usize>> {
        self.words(n + 1)
            .into_iter()
            .filter(|(s, w)| self.target[*w.last().unwrap()] == *s)
            .map(|(_, w)| w)
            .collect()
    }

    /// Rows spanning `im(1 - t)` in `C_n`, with `t(a₀…aₙ) = (-1)^n (aₙ a₀ … aₙ₋₁)`.
    fn relations(&self, n: usize) -> Vec<Vec<Q>> {
        let basis = self.cyclic(n);
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        basis
            .iter()
            .map(|w| {
                let mut v = vec![Q::zero(); basis.len()];
                v[index[w]] += Q::one();
                let mut t = w.clone();
                t.rotate_right(1);
                let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
                v[index[&t]] -= sign;
                v
            })
            .collect()
    }

    /// `b(a₀…aₙ) = Σᵢ₌₀ⁿ⁻¹ (-1)^i (…aᵢaᵢ₊₁…) + (-1)^n (aₙa₀, a₁, …)` as rows (one per source word).
    fn hochschild_boundary(&self, n: usize) -> Vec<Vec<Q>> {
        let target = self.cyclic(n - 1);
        let index: HashMap<_, _> = target.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        self.cyclic(n)
            .iter()
            .map(|w| {
                let mut v = vec![Q::zero(); target.len()];
                for i in 0..n {
                    let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
                    for (h, c) in self.mul(w[i], w[i + 1]) {
                        let mut w2 = w[..i].to_vec();
                        w2.push(*h);
                        w2.extend_from_slice(&w[i + 2..]);
                        v[index[&w2]] += c * &sign;
                    }
                }
                let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
                for (h, c) in self.mul(w[n], w[0]) {
                    let mut w2 = vec![*h];
                    w2.extend_from_slice(&w[1..n]);
                    v[index[&w2]] += c * &sign;
                }
                v
            })
            .collect()
    }

    /// Homology of `C_n / im(1 - t)` in degree `n`:
    /// `dim b⁻¹(R_{n-1}) - dim(im b_{n+1} + R_n)` computed in the full tensor spaces.
    fn hc(&self, n: usize) -> usize {
        let dim_n = self.cyclic(n).len();
        let rel_n = self.relations(n);
        let cycles = if n == 0 {
            dim_n
        } else {
            // preimage of R_{n-1} under b: dim = dim_n - (rank([b; R]) - rank(R))
            let b = self.hochschild_boundary(n);
            let rel = self.relations(n - 1);
            let mut stacked = b.clone();
            stacked.extend(rel.clone());
            dim_n - (rank(stacked) - rank(rel))
        };
        let mut spanned = self.hochschild_boundary(n + 1);
        spanned.extend(rel_n);
        cycles - rank(spanned)
    }
}

#[test]
fn hochschild_matches_oracle() {
    for (name, cat) in [("point", point()), ("M2", matrix_algebra(2)), ("two points", two_points())] {
        let oracle = Plain::new(&cat);
        let table = hochschild_cohomology(&cat, 4, (0, 2)).unwrap();
        for n in 0..=2 {
            assert_eq!(table.dims[&(n as i32)], oracle.hh(n), "{name}: HH^{n}");
        }
    }
}

#[test]
fn oracle_reproduces_known_values() {
    assert_eq!((0..3).map(|n| Plain::new(&point()).hh(n)).collect::<Vec<_>>(), vec![1, 0, 0]);
    assert_eq!((0..3).map(|n| Plain::new(&matrix_algebra(2)).hh(n)).collect::<Vec<_>>(), vec![1, 0, 0]);
    assert_eq!(Plain::new(&two_points()).hh(0), 2);
    assert_eq!((0..3).map(|n| Plain::new(&point()).hc(n)).collect::<Vec<_>>(), vec![1, 0, 1]);
}

#[test]
fn cyclic_matches_oracle() {
    for (name, cat) in [("point", point()), ("M2", matrix_algebra(2)), ("two points", two_points())] {
        let oracle = Plain::new(&cat);
        let table = cyclic_homology(&cat, 3, (0, 2)).unwrap();
        for n in 0..=2 {
            assert_eq!(table.dims[&(n as i32)], oracle.hc(n), "{name}: HC_{n}");
        }
    }
}
