use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;


use crate::linalg::{extend_basis, kernel_basis, SparseMatrix};

use super::presentation::DgCategory;
use super::structure::AInfinity;
use super::validate::validate;
use super::{DgCatError, HomologyTable};

type Q = BigRational;

/// Basis cochain: sends the composable word `word` (starting at object `start`)
/// to the basis vector `output`, and every other word to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CochainKey {
    pub start: usize,
    pub word: Vec<usize>,
    pub output: usize,
}

impl CochainKey {
    pub fn arity(&self) -> usize {
        self.word.len()
    }

    /// Shifted degree `s(output) - Σ s(word)`.
    pub fn shifted_degree(&self, a: &AInfinity) -> i32 {
        a.shifted[self.output] - self.word.iter().map(|&x| a.shifted[x]).sum::<i32>()
    }

    /// Total degree, normalized so that `HH⁰` is the centre.
    pub fn total_degree(&self, a: &AInfinity) -> i32 {
        self.shifted_degree(a) + 1
    }
}

/// A finite linear combination of basis cochains, sorted by key.
pub type Cochain = Vec<(CochainKey, Q)>;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Part {
    Internal,
    Composition,
    Both,
}

fn add(acc: &mut BTreeMap<CochainKey, Q>, key: CochainKey, c: Q) {
    let slot = acc.entry(key).or_insert_with(Q::zero);
    *slot += c;
}

/// `D e = m{e} - (-1)^|e| e{m}` for a basis cochain `e`, split into the
/// arity-preserving part `d₁` and the arity-raising part `d₂`.
pub(crate) fn differential(a: &AInfinity, e: &CochainKey, part: Part) -> Cochain {
    let mut acc = BTreeMap::new();
    let deg = e.shifted_degree(a) as i64;
    let end = e.word.last().map_or(e.start, |&x| a.target[x]);
    let outer = AInfinity::sign(deg + 1);
    let internal = part != Part::Composition;
    let composition = part != Part::Internal;

    if internal {
        for (z, c) in &a.m1[e.output] {
            add(&mut acc, CochainKey { start: e.start, word: e.word.clone(), output: *z }, c.clone());
        }
    }
    if composition {
        for y in 0..a.objects {
            for &x in &a.hom[end][y] {
                for (z, c) in a.m2(e.output, x) {
                    let mut word = e.word.clone();
                    word.push(x);
                    add(&mut acc, CochainKey { start: e.start, word, output: *z }, c.clone());
                }
            }
            for &x in &a.hom[y][e.start] {
                let s = AInfinity::sign(deg * a.shifted[x] as i64);
                for (z, c) in a.m2(x, e.output) {
                    let mut word = vec![x];
                    word.extend_from_slice(&e.word);
                    add(&mut acc, CochainKey { start: y, word, output: *z }, c * &s);
                }
            }
        }
    }
    let mut prefix = 0i64;
    for (i, &w) in e.word.iter().enumerate() {
        let s = &outer * AInfinity::sign(prefix);
        if internal {
            for (x, c) in &a.pre1[w] {
                let mut word = e.word.clone();
                word[i] = *x;
                add(&mut acc, CochainKey { start: e.start, word, output: e.output }, c * &s);
            }
        }
        if composition {
            for (f, g, c) in &a.pre2[w] {
                let mut word = e.word[..i].to_vec();
                word.push(*f);
                word.push(*g);
                word.extend_from_slice(&e.word[i + 1..]);
                add(&mut acc, CochainKey { start: e.start, word, output: e.output }, c * &s);
            }
        }
        prefix += a.shifted[w] as i64;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `D` applied to a combination of basis cochains.
pub(crate) fn apply(a: &AInfinity, f: &[(CochainKey, Q)]) -> Cochain {
    let mut acc = BTreeMap::new();
    for (k, c) in f {
        for (key, v) in differential(a, k, Part::Both) {
            add(&mut acc, key, v * c);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Every basis cochain of arity exactly `n`.
pub(crate) fn column(a: &AInfinity, n: usize) -> Vec<CochainKey> {
    let mut out = Vec::new();
    for start in 0..a.objects {
        for word in a.words_from(start, n) {
            let end = word.last().map_or(start, |&x| a.target[x]);
            for &output in &a.hom[start][end] {
                out.push(CochainKey { start, word: word.clone(), output });
            }
        }
    }
    out
}

pub(crate) fn exact_valid<S: crate::graded::Scalar>(cat: &DgCategory<S>) -> Result<DgCategory<Q>, DgCatError> {
    let exact = cat.to_exact()?;
    let report = validate(&exact);
    if let Some(v) = report.violations.first() {
        return Err(DgCatError::Invalid(v.to_string()));
    }
    Ok(exact)
}

/// The total Hochschild complex truncated to arities `≤ max_column`.
///
/// Cochains of higher arity form a subcomplex, so the truncation is the
/// quotient complex and its differential simply drops those rows.
#[derive(Debug, Clone)]
pub struct HochschildComplex {
    pub max_column: usize,
    pub basis: BTreeMap<i32, Vec<CochainKey>>,
    /// `differential[t]: C^t → C^(t+1)` with rows indexed by `basis[t + 1]`.
    pub differential: BTreeMap<i32, SparseMatrix>,
    structure: AInfinity,
    index: HashMap<CochainKey, usize>,
}

impl HochschildComplex {
    pub fn new<S: crate::graded::Scalar>(cat: &DgCategory<S>, max_column: usize) -> Result<Self, DgCatError> {
        let exact = exact_valid(cat)?;
        Ok(Self::build(AInfinity::new(&exact), max_column))
    }

    pub(crate) fn build(a: AInfinity, max_column: usize) -> Self {
        let mut basis: BTreeMap<i32, Vec<CochainKey>> = BTreeMap::new();
        for n in 0..=max_column {
            for key in column(&a, n) {
                basis.entry(key.total_degree(&a)).or_default().push(key);
            }
        }
        let mut index = HashMap::new();
        for keys in basis.values() {
            for (i, k) in keys.iter().enumerate() {
                index.insert(k.clone(), i);
            }
        }
        let differential = basis
            .par_iter()
            .map(|(&t, keys)| {
                let rows = basis.get(&(t + 1)).map_or(0, Vec::len);
                let triplets: Vec<(usize, usize, Q)> = keys
                    .iter()
                    .enumerate()
                    .flat_map(|(c, k)| {
                        differential(&a, k, Part::Both)
                            .into_iter()
                            .filter(|(key, _)| key.arity() <= max_column)
                            .map(|(key, v)| (index[&key], c, v))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                (t, SparseMatrix::from_triplets(rows, keys.len(), triplets))
            })
            .collect();
        HochschildComplex { max_column, basis, differential, structure: a, index }
    }

    pub fn structure(&self) -> &AInfinity {
        &self.structure
    }

    pub fn dim(&self, t: i32) -> usize {
        self.basis.get(&t).map_or(0, Vec::len)
    }

    fn rank(&self, t: i32) -> usize {
        self.differential.get(&t).map_or(0, SparseMatrix::rank)
    }

    pub fn cohomology(&self, t: i32) -> usize {
        self.dim(t) - self.rank(t) - self.rank(t - 1)
    }

    /// `D∘D = 0` on every assembled degree.
    pub fn square_zero(&self) -> bool {
        self.differential.iter().all(|(t, d)| match self.differential.get(&(t + 1)) {
            Some(next) => next.mul(d).is_zero(),
            None => true,
        })
    }

    /// Coordinates of a cochain in `basis[t]`.
    pub(crate) fn coordinates(&self, t: i32, f: &[(CochainKey, Q)]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim(t)];
        for (k, c) in f {
            v[self.index[k]] += c;
        }
        v
    }

    /// Largest degree whose cohomology the truncation computes correctly.
    pub fn reliable_max(&self) -> Option<i32> {
        reliable_max(&self.structure, self.max_column)
    }
}

fn reliable_max(a: &AInfinity, max_column: usize) -> Option<i32> {
    let dmin = a.shifted.iter().min()? + 1;
    let dmax = a.shifted.iter().max()? + 1;
    // omitted cochains have arity ≥ N + 1 and total degree ≥ dmin + (N + 1)(1 - dmax)
    (dmax <= 1).then(|| dmin + (max_column as i32 + 1) * (1 - dmax) - 2)
}

/// Hochschild cohomology dimensions in `window` (inclusive) from the total
/// complex through `max_column`.
pub fn hochschild_cohomology<S: crate::graded::Scalar>(
    cat: &DgCategory<S>,
    max_column: usize,
    window: (i32, i32),
) -> Result<HomologyTable, DgCatError> {
    if max_column < 1 {
        return Err(DgCatError::ColumnTooSmall);
    }
    let exact = exact_valid(cat)?;
    let a = AInfinity::new(&exact);
    let dims_at = |n: usize| -> BTreeMap<i32, usize> {
        let c = HochschildComplex::build(a.clone(), n);
        (window.0..=window.1).into_par_iter().map(|t| (t, c.cohomology(t))).collect()
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

/// Columns of the Hochschild bicomplex with its two differentials.
#[derive(Debug, Clone)]
pub struct HochschildBicomplex {
    /// `columns[n]`: basis cochains of arity `n`.
    pub columns: Vec<Vec<CochainKey>>,
    /// `d1[n]: column n → column n`, from the Hom differentials.
    pub d1: Vec<SparseMatrix>,
    /// `d2[n]: column n → column n + 1`, from the composition.
    pub d2: Vec<SparseMatrix>,
}

impl HochschildBicomplex {
    /// `d₁² = 0`, `d₂² = 0` and `d₁d₂ + d₂d₁ = 0` on every column where defined.
    pub fn relations_hold(&self) -> bool {
        let n = self.columns.len();
        (0..n).all(|i| self.d1[i].mul(&self.d1[i]).is_zero())
            && (0..self.d2.len()).all(|i| {
                let anti = self.d1[i + 1].mul(&self.d2[i]).add(&self.d2[i].mul(&self.d1[i]));
                let square = (i + 1 < self.d2.len()).then(|| self.d2[i + 1].mul(&self.d2[i]));
                anti.is_zero() && square.is_none_or(|m| m.is_zero())
            })
    }
}

pub fn hochschild_bicomplex<S: crate::graded::Scalar>(cat: &DgCategory<S>, max_column: usize) -> Result<HochschildBicomplex, DgCatError> {
    let a = AInfinity::new(&exact_valid(cat)?);
    let columns: Vec<Vec<CochainKey>> = (0..=max_column).map(|n| column(&a, n)).collect();
    let index: Vec<HashMap<&CochainKey, usize>> =
        columns.iter().map(|c| c.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let matrix = |from: usize, to: usize, part: Part| {
        let triplets = columns[from]
            .iter()
            .enumerate()
            .flat_map(|(c, k)| {
                differential(&a, k, part).into_iter().map(move |(key, v)| (key, c, v))
            })
            .map(|(key, c, v)| (index[to][&key], c, v))
            .collect::<Vec<_>>();
        SparseMatrix::from_triplets(columns[to].len(), columns[from].len(), triplets)
    };
    let d1 = (0..=max_column).map(|n| matrix(n, n, Part::Internal)).collect();
    let d2 = (0..max_column).map(|n| matrix(n, n + 1, Part::Composition)).collect();
    Ok(HochschildBicomplex { columns, d1, d2 })
}

/// A basis of `HH⁰` as explicit degree-0 cochains modulo coboundaries. The
/// unit cochain (the identities, in arity 0) is listed first when it is a cocycle.
pub fn hh0_cocycles<S: crate::graded::Scalar>(cat: &DgCategory<S>, max_column: usize) -> Result<Vec<Cochain>, DgCatError> {
    let exact = exact_valid(cat)?;
    let complex = HochschildComplex::build(AInfinity::new(&exact), max_column.max(1));
    let dense = |t: i32| complex.differential.get(&t).map(SparseMatrix::to_dense);
    let dim0 = complex.dim(0);
    let cocycles = match dense(0) {
        Some(m) if !m.is_empty() => kernel_basis(&m, dim0),
        _ => (0..dim0).map(|i| unit_vector(dim0, i)).collect(),
    };
    let boundaries: Vec<Vec<Q>> = match complex.differential.get(&-1) {
        Some(m) => (0..m.cols())
            .map(|c| {
                let mut v = vec![Q::zero(); dim0];
                for (r, x) in m.column(c) {
                    v[*r] = x.clone();
                }
                v
            })
            .collect(),
        None => Vec::new(),
    };
    let unit: Cochain = (0..exact.objects().len())
        .flat_map(|o| {
            exact.identity(o).iter().map(move |(e, c)| (CochainKey { start: o, word: Vec::new(), output: *e }, c.clone()))
        })
        .collect();
    let mut candidates = Vec::new();
    if super::hochschild::apply(complex.structure(), &unit).is_empty() {
        candidates.push(complex.coordinates(0, &unit));
    }
    candidates.extend(cocycles);
    let keys = complex.basis.get(&0).cloned().unwrap_or_default();
    Ok(extend_basis(&boundaries, &candidates)
        .into_iter()
        .map(|v| keys.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect())
        .collect())
}

fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}
