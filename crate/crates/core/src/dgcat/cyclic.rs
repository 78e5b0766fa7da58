use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::graded::{Letter, SignedCyclicWord};
use crate::linalg::SparseMatrix;

use super::hochschild::exact_valid;
use super::presentation::DgCategory;
use super::structure::AInfinity;
use super::{DgCatError, HomologyTable};

type Q = BigRational;

/// A canonical cyclic word: the basis indices of its minimal rotation.
pub type CyclicChain = Vec<usize>;

impl AInfinity {
    pub(crate) fn cyclic_word(&self, word: &[usize]) -> SignedCyclicWord<usize> {
        SignedCyclicWord::new(word.iter().map(|&x| Letter::new(x, self.shifted[x])).collect())
    }

    /// Canonical form of `word` in the coinvariants: `None` when the class vanishes.
    pub(crate) fn canonical(&self, word: &[usize]) -> Option<(CyclicChain, i8)> {
        let n = self.cyclic_word(word).normalize();
        (!n.vanishes).then(|| (n.word.letters().iter().map(|l| l.key).collect(), n.word.sign()))
    }

    /// Homological degree `n - Σ|xᵢ|` of a word with `n + 1` letters.
    pub(crate) fn chain_degree(&self, word: &[usize]) -> i32 {
        -word.iter().map(|&x| self.shifted[x]).sum::<i32>() - 1
    }

    /// The cyclic bar differential of the tensor `x₀ ⊗ … ⊗ xₙ`, projected to
    /// canonical words.
    pub(crate) fn cyclic_boundary(&self, word: &[usize]) -> BTreeMap<CyclicChain, Q> {
        let mut acc: BTreeMap<CyclicChain, Q> = BTreeMap::new();
        let mut push = |w: Vec<usize>, c: Q| {
            if let Some((canon, s)) = self.canonical(&w) {
                let slot = acc.entry(canon).or_insert_with(Q::zero);
                if s > 0 {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
        };
        let n = word.len();
        let mut prefix = 0i64;
        for i in 0..n {
            let s = AInfinity::sign(prefix);
            for (z, c) in &self.m1[word[i]] {
                let mut w = word.to_vec();
                w[i] = *z;
                push(w, c * &s);
            }
            if i + 1 < n {
                for (z, c) in self.m2(word[i], word[i + 1]) {
                    let mut w = word[..i].to_vec();
                    w.push(*z);
                    w.extend_from_slice(&word[i + 2..]);
                    push(w, c * &s);
                }
            }
            prefix += self.shifted[word[i]] as i64;
        }
        if n >= 2 {
            let last = self.shifted[word[n - 1]] as i64;
            let s = AInfinity::sign(last * (prefix - last));
            for (z, c) in self.m2(word[n - 1], word[0]) {
                let mut w = vec![*z];
                w.extend_from_slice(&word[1..n - 1]);
                push(w, c * &s);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    /// Every cyclically composable word of length `len`.
    pub(crate) fn cyclic_words(&self, len: usize) -> Vec<Vec<usize>> {
        (0..self.objects)
            .flat_map(|start| {
                self.words_from(start, len)
                    .into_iter()
                    .filter(move |w| w.last().is_some_and(|&x| self.target[x] == start))
            })
            .collect()
    }
}

/// The cyclic complex truncated to words of at most `max_column + 1` letters.
/// Word length never grows under the differential, so this is a subcomplex.
#[derive(Debug, Clone)]
pub struct CyclicComplex {
    pub max_column: usize,
    pub basis: BTreeMap<i32, Vec<CyclicChain>>,
    /// `boundary[k]: C_k → C_(k-1)` with rows indexed by `basis[k - 1]`.
    pub boundary: BTreeMap<i32, SparseMatrix>,
    structure: AInfinity,
}

impl CyclicComplex {
    pub(crate) fn build(a: AInfinity, max_column: usize) -> Self {
        let mut basis: BTreeMap<i32, Vec<CyclicChain>> = BTreeMap::new();
        for len in 1..=max_column + 1 {
            for w in a.cyclic_words(len) {
                if matches!(a.canonical(&w), Some((c, _)) if c == w) {
                    basis.entry(a.chain_degree(&w)).or_default().push(w);
                }
            }
        }
        let index: HashMap<&CyclicChain, usize> =
            basis.values().flat_map(|ws| ws.iter().enumerate().map(|(i, w)| (w, i))).collect();
        let boundary = basis
            .par_iter()
            .map(|(&k, words)| {
                let rows = basis.get(&(k - 1)).map_or(0, Vec::len);
                let triplets: Vec<(usize, usize, Q)> = words
                    .iter()
                    .enumerate()
                    .flat_map(|(c, w)| {
                        a.cyclic_boundary(w).into_iter().map(|(t, v)| (index[&t], c, v)).collect::<Vec<_>>()
                    })
                    .collect();
                (k, SparseMatrix::from_triplets(rows, words.len(), triplets))
            })
            .collect();
        CyclicComplex { max_column, basis, boundary, structure: a }
    }

    pub fn structure(&self) -> &AInfinity {
        &self.structure
    }

    pub fn dim(&self, k: i32) -> usize {
        self.basis.get(&k).map_or(0, Vec::len)
    }

    fn rank(&self, k: i32) -> usize {
        self.boundary.get(&k).map_or(0, SparseMatrix::rank)
    }

    pub fn homology(&self, k: i32) -> usize {
        self.dim(k) - self.rank(k) - self.rank(k + 1)
    }

    pub fn square_zero(&self) -> bool {
        self.boundary.iter().all(|(k, d)| match self.boundary.get(&(k - 1)) {
            Some(next) => next.mul(d).is_zero(),
            None => true,
        })
    }
}

pub fn cyclic_complex<S: crate::graded::Scalar>(cat: &DgCategory<S>, max_column: usize) -> Result<CyclicComplex, DgCatError> {
    Ok(CyclicComplex::build(AInfinity::new(&exact_valid(cat)?), max_column))
}

fn reliable_max(a: &AInfinity, max_column: usize) -> Option<i32> {
    let dmax = a.shifted.iter().max()? + 1;
    // omitted words have n ≥ N + 1 and degree ≥ n - (n + 1)·dmax
    (dmax <= 1).then(|| max_column as i32 - 1 - (max_column as i32 + 2) * dmax)
}

/// Cyclic homology dimensions in `window` (inclusive) through `max_column`.
pub fn cyclic_homology<S: crate::graded::Scalar>(
    cat: &DgCategory<S>,
    max_column: usize,
    window: (i32, i32),
) -> Result<HomologyTable, DgCatError> {
    if max_column < 1 {
        return Err(DgCatError::ColumnTooSmall);
    }
    let a = AInfinity::new(&exact_valid(cat)?);
    let dims_at = |n: usize| -> BTreeMap<i32, usize> {
        let c = CyclicComplex::build(a.clone(), n);
        (window.0..=window.1).into_par_iter().map(|k| (k, c.homology(k))).collect()
    };
    let dims = dims_at(max_column);
    let previous = dims_at(max_column - 1);
    let reliable = reliable_max(&a, max_column);
    Ok(HomologyTable {
        max_column,
        window,
        stable: dims == previous,
        window_reliable: reliable.is_some_and(|r| window.1 <= r),
        reliable_max: reliable,
        dims,
    })
}
