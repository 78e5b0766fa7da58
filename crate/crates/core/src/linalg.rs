//! Exact linear algebra over the rationals.
//!
//! Rank uses fraction-free integer row reduction: every row is cleared of
//! denominators once, pairs of rows are combined by cross multiplication and
//! the result is divided by its content, so entries stay small integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse matrix stored by columns; each column is a sorted `(row, value)` list.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, BigRational)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            let slot = acc[c].entry(r).or_insert_with(BigRational::zero);
            *slot += v;
        }
        let columns = acc
            .into_iter()
            .map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigRational)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.columns[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let entries = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (c, *r, v.clone())));
        SparseMatrix::from_triplets(self.cols(), self.rows, entries)
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch in product");
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, b) in rcol {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_insert_with(BigRational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()));
        let entries = |m: &SparseMatrix| {
            m.columns
                .iter()
                .enumerate()
                .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
                .collect::<Vec<_>>()
        };
        SparseMatrix::from_triplets(self.rows, self.cols(), entries(self).into_iter().chain(entries(rhs)))
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![BigRational::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r] += a * &v[c];
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut out = vec![vec![BigRational::zero(); self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        // Rank of the transpose is the same; eliminate whichever side is shorter.
        if self.rows < self.cols() {
            return self.transpose().rank();
        }
        let mut echelon = Echelon::default();
        for col in &self.columns {
            echelon.insert(integer_row(col));
        }
        echelon.pivots.len()
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn integer_row(col: &[(usize, BigRational)]) -> IntRow {
    let lcm = col.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let row: IntRow = col.iter().map(|(i, v)| (*i, v.numer() * (&lcm / v.denom()))).collect();
    primitive(row)
}

fn primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut row {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in &mut row {
            *v = -&*v;
        }
    }
    row
}

#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: IntRow) {
        while let Some(&(lead, _)) = row.first() {
            let Some(pivot) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, row);
                return;
            };
            let a = pivot[0].1.clone();
            let b = row[0].1.clone();
            row = primitive(combine(&row, &a, pivot, &b));
        }
    }
}

/// `x * a - y * b`, dropping zeros.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, &x[i].1 * a));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(&y[j].1 * b)));
            j += 1;
        } else {
            let v = &x[i].1 * a - &y[j].1 * b;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a dense rational matrix; returns pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of a dense matrix with `cols` columns.
pub fn kernel_basis(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -work[row][f].clone();
            }
            v
        })
        .collect()
}

/// Vectors from `candidates` that extend a basis of `span(base)`; greedy in order.
pub fn extend_basis(base: &[Vec<BigRational>], candidates: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut echelon = Echelon::default();
    let as_row = |v: &[BigRational]| -> IntRow {
        let sparse: Vec<(usize, BigRational)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        integer_row(&sparse)
    };
    for v in base {
        echelon.insert(as_row(v));
    }
    let mut out = Vec::new();
    for v in candidates {
        let before = echelon.pivots.len();
        echelon.insert(as_row(v));
        if echelon.pivots.len() > before {
            out.push(v.clone());
        }
    }
    out
}
