//! Exterior algebra on `dz_s, dz̄_s` for the free vertices `s` of a configuration.
//!
//! Generator `2s` is `dz_s` and `2s + 1` is `dz̄_s`; an element is a dense
//! coefficient vector indexed by bit masks over the generators.

use num_complex::Complex64;
use smallvec::{smallvec, SmallVec};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Ext {
    generators: usize,
    coeffs: SmallVec<[Complex64; 16]>,
}

impl Ext {
    pub fn scalar(free: usize, c: Complex64) -> Self {
        let mut coeffs: SmallVec<[Complex64; 16]> = smallvec![ZERO; 1 << (2 * free)];
        coeffs[0] = c;
        Ext { generators: 2 * free, coeffs }
    }

    /// `a dz_s + b dz̄_s`.
    pub fn one_form(free: usize, slot: usize, a: Complex64, b: Complex64) -> Self {
        let mut e = Ext::scalar(free, ZERO);
        e.coeffs[1 << (2 * slot)] = a;
        e.coeffs[1 << (2 * slot + 1)] = b;
        e
    }

    /// `c dz_s∧dz̄_s`.
    pub fn two_form(free: usize, slot: usize, c: Complex64) -> Self {
        let mut e = Ext::scalar(free, ZERO);
        e.coeffs[3 << (2 * slot)] = c;
        e
    }

    pub fn add_assign(&mut self, other: &Ext) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.coeffs {
            *a *= c;
        }
    }

    pub fn wedge(&self, other: &Ext) -> Ext {
        let mut out = Ext::scalar(self.generators / 2, ZERO);
        let right: SmallVec<[(usize, Complex64); 16]> =
            other.coeffs.iter().enumerate().filter(|(_, b)| **b != ZERO).map(|(m, b)| (m, *b)).collect();
        for (ma, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for &(mb, b) in &right {
                if ma & mb == 0 {
                    out.coeffs[ma | mb] += a * b * reorder_sign(ma, mb);
                }
            }
        }
        out
    }

    /// Coefficient of `dz_0∧dz̄_0∧dz_1∧dz̄_1∧…`.
    pub fn top(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn get(&self, mask: usize) -> Complex64 {
        self.coeffs[mask]
    }
}

/// Sign of sorting the concatenation of generator sets `a` then `b`.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn one_forms_anticommute() {
        let a = Ext::one_form(2, 0, c(1.0), c(2.0));
        let b = Ext::one_form(2, 1, c(3.0), c(-1.0));
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        for m in 0..16 {
            assert_eq!(ab.get(m), -ba.get(m));
        }
        assert_eq!(a.wedge(&a), Ext::scalar(2, c(0.0)));
    }

    #[test]
    fn top_of_product_of_volume_forms() {
        let v0 = Ext::two_form(2, 0, c(2.0));
        let v1 = Ext::two_form(2, 1, c(5.0));
        assert_eq!(v1.wedge(&v0).top(), c(10.0));
        // dz̄_0 ∧ dz_0 = −dz_0∧dz̄_0
        let dzb = Ext::one_form(1, 0, c(0.0), c(1.0));
        let dz = Ext::one_form(1, 0, c(1.0), c(0.0));
        assert_eq!(dzb.wedge(&dz).top(), c(-1.0));
    }
}
