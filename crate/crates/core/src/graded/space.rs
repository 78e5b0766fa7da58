use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::sign::parity_sign;
use super::GradedError;

/// Finite dimensional cohomologically graded vector space with named basis.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    basis: BTreeMap<i32, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// The one dimensional space spanned by `label` in degree 0.
    pub fn unit() -> Self {
        Self::from_basis([(0, vec!["1".to_string()])])
    }

    pub fn from_basis(basis: impl IntoIterator<Item = (i32, Vec<String>)>) -> Self {
        let basis = basis.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        GradedVectorSpace { basis }
    }

    /// Space with the given dimension in each degree and generated labels `e{degree}_{i}`.
    pub fn from_dims(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        Self::from_basis(
            dims.into_iter()
                .map(|(d, n)| (d, (0..n).map(|i| format!("e{d}_{i}")).collect())),
        )
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.basis.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.basis.iter().map(|(d, b)| (*d, b.len())).collect()
    }

    pub fn labels(&self, degree: i32) -> &[String] {
        self.basis.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    /// `V[k]`, i.e. `(V[k])^i = V^(i+k)`.
    pub fn shift(&self, k: i32) -> Self {
        GradedVectorSpace { basis: self.basis.iter().map(|(d, b)| (d - k, b.clone())).collect() }
    }

    /// Graded tensor product; basis `a⊗b` ordered lexicographically within each degree.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for (da, ba) in &self.basis {
            for (db, bb) in &other.basis {
                let slot = basis.entry(da + db).or_default();
                for a in ba {
                    for b in bb {
                        slot.push(format!("{a}⊗{b}"));
                    }
                }
            }
        }
        GradedVectorSpace { basis }
    }
}

/// A graded space with a degree +1 differential, stored as one matrix per source degree.
#[derive(Debug, Clone)]
pub struct HomComplex<S> {
    space: GradedVectorSpace,
    differential: BTreeMap<i32, Matrix<S>>,
}

impl<S: Scalar> HomComplex<S> {
    /// Builds the complex; `differential[i]` maps degree `i` to degree `i + 1`.
    /// Missing entries are zero. Rejects wrong shapes and `d∘d ≠ 0`.
    pub fn new(
        space: GradedVectorSpace,
        differential: BTreeMap<i32, Matrix<S>>,
    ) -> Result<Self, GradedError> {
        let mut clean = BTreeMap::new();
        for (deg, m) in differential {
            let expected = (space.dim(deg + 1), space.dim(deg));
            if (m.rows(), m.cols()) != expected {
                return Err(GradedError::ShapeMismatch {
                    degree: deg,
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
            if !m.is_zero() {
                clean.insert(deg, m);
            }
        }
        let complex = HomComplex { space, differential: clean };
        for deg in complex.space.support().collect::<Vec<_>>() {
            let dd = complex.d(deg + 1).mul(&complex.d(deg));
            if !dd.is_zero() {
                return Err(GradedError::DifferentialNotSquareZero { degree: deg });
            }
        }
        Ok(complex)
    }

    /// Complex with zero differential.
    pub fn trivial(space: GradedVectorSpace) -> Self {
        HomComplex { space, differential: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    /// Matrix of `d` from degree `degree` to `degree + 1`.
    pub fn d(&self, degree: i32) -> Matrix<S> {
        self.differential
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.space.dim(degree + 1), self.space.dim(degree)))
    }

    /// `C[k]` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Self {
        let sign = S::from_i64(parity_sign(k as i64) as i64);
        HomComplex {
            space: self.space.shift(k),
            differential: self.differential.iter().map(|(d, m)| (d - k, m.scale(&sign))).collect(),
        }
    }

    /// Tensor product with `d(a⊗b) = da⊗b + (-1)^|a| a⊗db`.
    pub fn tensor(&self, other: &Self) -> Self {
        let space = self.space.tensor(&other.space);
        let mut differential = BTreeMap::new();
        for total in space.support() {
            let blocks_src = tensor_blocks(&self.space, &other.space, total);
            let blocks_dst = tensor_blocks(&self.space, &other.space, total + 1);
            let mut m = Matrix::zeros(space.dim(total + 1), space.dim(total));
            for &(da, db, src_off) in &blocks_src {
                let (na, nb) = (self.space.dim(da), other.space.dim(db));
                // da ⊗ 1 lands in block (da + 1, db)
                if let Some(&(_, _, dst_off)) =
                    blocks_dst.iter().find(|(a, b, _)| *a == da + 1 && *b == db)
                {
                    let dpart = self.d(da).kron(&Matrix::identity(nb));
                    place(&mut m, &dpart, dst_off, src_off);
                }
                if let Some(&(_, _, dst_off)) =
                    blocks_dst.iter().find(|(a, b, _)| *a == da && *b == db + 1)
                {
                    let sign = S::from_i64(parity_sign(da as i64) as i64);
                    let dpart = Matrix::identity(na).kron(&other.d(db)).scale(&sign);
                    place(&mut m, &dpart, dst_off, src_off);
                }
            }
            if !m.is_zero() {
                differential.insert(total, m);
            }
        }
        HomComplex { space, differential }
    }
}

/// Blocks `(deg_a, deg_b, offset)` making up degree `total` of `a ⊗ b`, in basis order.
fn tensor_blocks(a: &GradedVectorSpace, b: &GradedVectorSpace, total: i32) -> Vec<(i32, i32, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for da in a.support() {
        let db = total - da;
        let n = a.dim(da) * b.dim(db);
        if n > 0 {
            out.push((da, db, offset));
            offset += n;
        }
    }
    out
}

fn place<S: Scalar>(target: &mut Matrix<S>, block: &Matrix<S>, row: usize, col: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                target.add_to(row + i, col + j, v.clone());
            }
        }
    }
}

/// The symmetry isomorphism `A ⊗ B → B ⊗ A` in total degree `total`,
/// `a⊗b ↦ (-1)^(|a||b|) b⊗a`.
pub fn swap_matrix<S: Scalar>(a: &GradedVectorSpace, b: &GradedVectorSpace, total: i32) -> Matrix<S> {
    let src = tensor_blocks(a, b, total);
    let dst = tensor_blocks(b, a, total);
    let n: usize = src.iter().map(|(x, y, _)| a.dim(*x) * b.dim(*y)).sum();
    let mut m = Matrix::zeros(n, n);
    for &(da, db, src_off) in &src {
        let (_, _, dst_off) = *dst.iter().find(|(x, y, _)| *x == db && *y == da).expect("block");
        let sign = S::from_i64(parity_sign(da as i64 * db as i64) as i64);
        let (na, nb) = (a.dim(da), b.dim(db));
        for i in 0..na {
            for j in 0..nb {
                m.set(dst_off + j * na + i, src_off + i * nb + j, sign.clone());
            }
        }
    }
    m
}

/// Homogeneous element with a pending shift: effective degree is `degree - shift`.
#[derive(Debug, Clone)]
pub struct ShiftedElement<S> {
    pub degree: i32,
    pub coefficients: Vec<S>,
    pub shift: i32,
}

impl<S: Scalar> ShiftedElement<S> {
    pub fn new(degree: i32, coefficients: Vec<S>) -> Self {
        ShiftedElement { degree, coefficients, shift: 0 }
    }

    pub fn effective_degree(&self) -> i32 {
        self.degree - self.shift
    }

    pub fn shifted(&self, k: i32) -> Self {
        ShiftedElement { shift: self.shift + k, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Cx;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    #[test]
    fn shift_examples() {
        let v = GradedVectorSpace::from_dims([(2, 1), (3, 2)]);
        assert_eq!(v.shift(0), v);
        assert_eq!(v.shift(1).shift(-1), v);
        assert_eq!(v.shift(1).dim(1), 1);
        let e = ShiftedElement::new(2, vec![q(1)]);
        assert_eq!(e.shifted(1).effective_degree(), 1);
        assert_eq!(e.shifted(1).shifted(-1).effective_degree(), 2);
    }

    #[test]
    fn tensor_examples() {
        let a = GradedVectorSpace::from_dims([(0, 2)]);
        let b = GradedVectorSpace::from_dims([(1, 3)]);
        assert_eq!(a.tensor(&b).dims(), BTreeMap::from([(1, 6)]));
        let unit = GradedVectorSpace::unit();
        assert_eq!(unit.tensor(&b).dims(), b.dims());

        let odd = GradedVectorSpace::from_dims([(1, 1)]);
        let s: Matrix<Q> = swap_matrix(&odd, &odd, 2);
        assert_eq!((s.rows(), s.cols()), (1, 1));
        assert_eq!(*s.get(0, 0), q(-1));
    }

    #[test]
    fn rejects_nonzero_square() {
        let space = GradedVectorSpace::from_dims([(0, 1), (1, 1), (2, 1)]);
        let d = BTreeMap::from([
            (0, Matrix::from_rows(vec![vec![q(1)]])),
            (1, Matrix::from_rows(vec![vec![q(1)]])),
        ]);
        assert!(matches!(
            HomComplex::new(space.clone(), d),
            Err(GradedError::DifferentialNotSquareZero { degree: 0 })
        ));
        let bad_shape = BTreeMap::from([(0, Matrix::from_rows(vec![vec![q(1), q(1)]]))]);
        assert!(HomComplex::new(space, bad_shape).is_err());
    }

    #[test]
    fn float_regime_tolerates_roundoff() {
        let space = GradedVectorSpace::from_dims([(0, 1), (1, 1), (2, 1)]);
        let d = BTreeMap::from([
            (0, Matrix::from_rows(vec![vec![Cx::new(1.0, 0.0)]])),
            (1, Matrix::from_rows(vec![vec![Cx::new(1e-13, 0.0)]])),
        ]);
        assert!(HomComplex::new(space, d).is_ok());
    }

    /// Random complex: a chain of acyclic pairs `d(x_i) = y_i` plus free generators.
    fn random_complex() -> impl Strategy<Value = HomComplex<Q>> {
        proptest::collection::vec((0i32..3, 0usize..3, 0usize..2), 1..4).prop_map(|spec| {
            let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
            let mut pairs = Vec::new();
            for (deg, free, paired) in spec {
                *dims.entry(deg).or_default() += free;
                for _ in 0..paired {
                    let s = *dims.entry(deg).or_default();
                    let t = *dims.entry(deg + 1).or_default();
                    dims.insert(deg, s + 1);
                    dims.insert(deg + 1, t + 1);
                    pairs.push((deg, s, t));
                }
            }
            let space = GradedVectorSpace::from_dims(dims.clone());
            let mut d: BTreeMap<i32, Matrix<Q>> = BTreeMap::new();
            for (deg, s, t) in pairs {
                let m = d.entry(deg).or_insert_with(|| Matrix::zeros(space.dim(deg + 1), space.dim(deg)));
                m.set(t, s, q(2));
            }
            HomComplex::new(space, d).expect("pairs give d^2 = 0")
        })
    }

    proptest! {
        #[test]
        fn tensor_and_shift_preserve_square_zero(a in random_complex(), b in random_complex(), k in -2i32..3) {
            let t = a.tensor(&b).shift(k);
            for deg in t.space().support() {
                prop_assert!(t.d(deg + 1).mul(&t.d(deg)).is_zero());
            }
        }
    }
}
