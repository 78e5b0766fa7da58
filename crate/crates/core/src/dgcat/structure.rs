use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::presentation::DgCategory;

type Q = BigRational;

/// The shifted A∞ structure of a dg category with preimage tables, shared by
/// the Hochschild and cyclic complexes.
#[derive(Debug, Clone)]
pub struct AInfinity {
    pub(crate) objects: usize,
    pub(crate) source: Vec<usize>,
    pub(crate) target: Vec<usize>,
    /// Shifted degree `|x| - 1`.
    pub(crate) shifted: Vec<i32>,
    pub(crate) hom: Vec<Vec<Vec<usize>>>,
    pub(crate) m1: Vec<Vec<(usize, Q)>>,
    pub(crate) m2: HashMap<(usize, usize), Vec<(usize, Q)>>,
    /// `pre1[h]`: every `(x, c)` with `c·h` a term of `m₁(x)`.
    pub(crate) pre1: Vec<Vec<(usize, Q)>>,
    /// `pre2[h]`: every `(x, y, c)` with `c·h` a term of `m₂(x, y)`.
    pub(crate) pre2: Vec<Vec<(usize, usize, Q)>>,
}

fn sign(exp: i64) -> Q {
    if exp.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

impl AInfinity {
    pub fn new(cat: &DgCategory<Q>) -> Self {
        let basis = cat.basis();
        let n = basis.len();
        let k = cat.objects().len();
        let shifted: Vec<i32> = basis.iter().map(|b| b.degree - 1).collect();
        let mut m1 = vec![Vec::new(); n];
        let mut pre1 = vec![Vec::new(); n];
        for (i, row) in m1.iter_mut().enumerate() {
            for (j, c) in cat.d(i) {
                let v = -c.clone();
                row.push((*j, v.clone()));
                pre1[*j].push((i, v));
            }
        }
        let mut m2 = HashMap::new();
        let mut pre2 = vec![Vec::new(); n];
        let mut keys: Vec<_> = cat.composition_entries().map(|(k, _)| *k).collect();
        keys.sort_unstable();
        for (f, g) in keys {
            let s = sign(shifted[f] as i64);
            let terms: Vec<(usize, Q)> = cat.compose(f, g).iter().map(|(h, c)| (*h, c * &s)).collect();
            for (h, c) in &terms {
                pre2[*h].push((f, g, c.clone()));
            }
            m2.insert((f, g), terms);
        }
        let hom = (0..k).map(|x| (0..k).map(|y| cat.hom(x, y).to_vec()).collect()).collect();
        AInfinity {
            objects: k,
            source: basis.iter().map(|b| b.source).collect(),
            target: basis.iter().map(|b| b.target).collect(),
            shifted,
            hom,
            m1,
            m2,
            pre1,
            pre2,
        }
    }

    pub fn len(&self) -> usize {
        self.shifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifted.is_empty()
    }

    pub(crate) fn m2(&self, f: usize, g: usize) -> &[(usize, Q)] {
        self.m2.get(&(f, g)).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn sign(exp: i64) -> Q {
        sign(exp)
    }

    /// Every composable word of length `n` starting at `start` (`n = 0` gives the empty word).
    pub(crate) fn words_from(&self, start: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.extend_words(start, n, &mut cur, &mut out);
        out
    }

    fn extend_words(&self, at: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for y in 0..self.objects {
            for &e in &self.hom[at][y] {
                cur.push(e);
                self.extend_words(y, n, cur, out);
                cur.pop();
            }
        }
    }

    /// `m{m} = 0` on all composable basis triples, a consistency check of the
    /// shifted signs.
    #[cfg(test)]
    pub(crate) fn stasheff_defect(&self) -> bool {
        use super::presentation::push_term;
        let add = |acc: &mut Vec<(usize, Q)>, terms: &[(usize, Q)], c: &Q| {
            for (h, v) in terms {
                push_term(acc, *h, v * c);
            }
        };
        for x in 0..self.len() {
            let mut acc = Vec::new();
            for (y, c) in &self.m1[x] {
                add(&mut acc, &self.m1[*y], c);
            }
            if !acc.is_empty() {
                return true;
            }
        }
        for x in 0..self.len() {
            for y in self.hom[self.target[x]].iter().flatten().copied().collect::<Vec<_>>() {
                // m1 m2 + m2(m1 ⊗ 1) + m2(1 ⊗ m1)
                let mut acc = Vec::new();
                for (h, c) in self.m2(x, y) {
                    add(&mut acc, &self.m1[*h], c);
                }
                for (dx, c) in &self.m1[x] {
                    add(&mut acc, self.m2(*dx, y), c);
                }
                let s = sign(self.shifted[x] as i64);
                for (dy, c) in &self.m1[y] {
                    add(&mut acc, self.m2(x, *dy), &(c * &s));
                }
                if !acc.is_empty() {
                    return true;
                }
                for z in self.hom[self.target[y]].iter().flatten().copied().collect::<Vec<_>>() {
                    let mut acc = Vec::new();
                    for (h, c) in self.m2(x, y) {
                        add(&mut acc, self.m2(*h, z), c);
                    }
                    for (h, c) in self.m2(y, z) {
                        add(&mut acc, self.m2(x, *h), &(c * &s));
                    }
                    if !acc.is_empty() {
                        return true;
                    }
                }
            }
        }
        false
    }
}
