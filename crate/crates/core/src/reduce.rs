//! Fixed-order summation.
//!
//! Sums are formed over a balanced binary tree whose shape depends only on the
//! number of terms, so a result does not depend on how the terms were produced
//! (serially or by any number of worker threads).

use num_complex::Complex64;
use rayon::prelude::*;

const LEAF: usize = 8;

pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |a, b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= LEAF {
        return values.iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

/// Evaluates `f` on `0..n` in parallel and sums the results in fixed order.
pub fn par_sum_complex<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync + Send,
{
    let values: Vec<Complex64> = (0..n).into_par_iter().map(f).collect();
    pairwise_sum_complex(&values)
}
