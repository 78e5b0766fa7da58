use super::GradedError;

/// Koszul sign of reordering homogeneous elements.
///
/// `permutation[k]` is the index of the element that ends up at position `k`;
/// `degrees[i]` is the degree of element `i` in the original order. Every
/// inversion `(a, b)` contributes `(-1)^(deg a * deg b)`.
pub fn koszul_sign(permutation: &[usize], degrees: &[i32]) -> Result<i8, GradedError> {
    if permutation.len() != degrees.len() {
        return Err(GradedError::LengthMismatch { left: permutation.len(), right: degrees.len() });
    }
    let n = permutation.len();
    let mut seen = vec![false; n];
    for &p in permutation {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(GradedError::NotAPermutation(permutation.to_vec()));
        }
    }
    let mut odd = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (permutation[i], permutation[j]);
            if a > b && degrees[a].rem_euclid(2) == 1 && degrees[b].rem_euclid(2) == 1 {
                odd += 1;
            }
        }
    }
    Ok(if odd % 2 == 0 { 1 } else { -1 })
}

/// Sign of moving the last of `degrees` to the front: `(-1)^(d_last * sum of the rest)`.
pub fn rotation_sign(degrees: &[i32]) -> i8 {
    match degrees.split_last() {
        None => 1,
        Some((last, rest)) => {
            let rest: i64 = rest.iter().map(|&d| d as i64).sum();
            if (*last as i64 * rest).rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// `(-1)^n`.
pub fn parity_sign(n: i64) -> i8 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
