//! Pfaffians and determinants of skew-symmetric matrices over any [`Ring`].
//!
//! Two independent Pfaffian routes are provided: [`pf_matchsum`] enumerates
//! perfect matchings and signs them by the inversion count of the induced
//! permutation; [`pf_expand`] expands along the first row with memoisation on
//! index subsets. [`determinant`] is a separate cofactor expansion used for the
//! `Pf² = det` check.

use std::collections::HashMap;

use thiserror::Error;

use crate::polycore::Ring;

/// Default size limit for the matching-enumeration oracle.
pub const DEFAULT_MATCHSUM_BOUND: usize = 10;

/// Subset memoisation uses a `u64` bitmask.
pub const MAX_EXPAND_SIZE: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PfaffianError {
    #[error("Pfaffian of odd size {0} requested")]
    OddSize(usize),
    #[error("matrix size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
}

/// A skew-symmetric matrix storing only the strictly upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<R> {
    n: usize,
    upper: Vec<R>,
}

impl<R: Ring> SkewMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix { n, upper: vec![R::zero(); n * n.saturating_sub(1) / 2] }
    }

    /// Builds the matrix from `f(i, j)` for `i < j` (0-based).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(f(i, j));
            }
        }
        SkewMatrix { n, upper }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Sets `a_ij` for `i < j`; `a_ji` follows by skew-symmetry.
    pub fn set(&mut self, i: usize, j: usize, value: R) {
        assert!(i < j && j < self.n, "set expects i < j < n");
        let k = self.offset(i, j);
        self.upper[k] = value;
    }

    /// The stored entry `a_ij` for `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &R {
        &self.upper[self.offset(i, j)]
    }

    /// Any entry, with `a_ji = -a_ij` and a zero diagonal.
    pub fn get(&self, i: usize, j: usize) -> R {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper(i, j).clone(),
            Greater => self.upper(j, i).neg(),
            Equal => R::zero(),
        }
    }

    /// The matrix with rows and columns reordered so that new index `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        SkewMatrix::from_fn(self.n, |i, j| self.get(perm[i], perm[j]))
    }

    /// The principal submatrix on `keep` (in the given order).
    pub fn submatrix(&self, keep: &[usize]) -> Self {
        SkewMatrix::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }
}

/// Pfaffian by summing over perfect matchings with the bound
/// [`DEFAULT_MATCHSUM_BOUND`].
pub fn pf_matchsum<R: Ring>(a: &SkewMatrix<R>) -> Result<R, PfaffianError> {
    pf_matchsum_bounded(a, DEFAULT_MATCHSUM_BOUND)
}

/// Pfaffian as `Σ_σ sgn(σ) Π a_{σ(2i-1), σ(2i)}` over permutations with
/// `σ(2i-1) < σ(2i)` and `σ(2i-1) < σ(2i+1)`: every product uses entries above
/// the diagonal only.
pub fn pf_matchsum_bounded<R: Ring>(a: &SkewMatrix<R>, bound: usize) -> Result<R, PfaffianError> {
    let n = a.size();
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    if n > bound {
        return Err(PfaffianError::TooLarge { size: n, bound });
    }
    let mut total = R::zero();
    let mut used = vec![false; n];
    let mut sigma = Vec::with_capacity(n);
    enumerate_matchings(a, &mut used, &mut sigma, &mut total);
    Ok(total)
}

fn enumerate_matchings<R: Ring>(a: &SkewMatrix<R>, used: &mut [bool], sigma: &mut Vec<usize>, total: &mut R) {
    let Some(first) = used.iter().position(|u| !u) else {
        let mut term = R::one();
        for pair in sigma.chunks(2) {
            term = term.mul(a.upper(pair[0], pair[1]));
        }
        if inversions(sigma) % 2 == 1 {
            term = term.neg();
        }
        total.add_assign(&term);
        return;
    };
    used[first] = true;
    for second in first + 1..used.len() {
        if used[second] {
            continue;
        }
        used[second] = true;
        sigma.push(first);
        sigma.push(second);
        enumerate_matchings(a, used, sigma, total);
        sigma.truncate(sigma.len() - 2);
        used[second] = false;
    }
    used[first] = false;
}

fn inversions(sigma: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                count += 1;
            }
        }
    }
    count
}

/// Pfaffian by expansion along the first row,
/// `Pf(A) = Σ_{j≥2} (-1)^j a_{1j} Pf(A_{1̂ĵ})`, memoised on the set of
/// remaining indices. Division-free, so it works over polynomial rings.
pub fn pf_expand<R: Ring>(a: &SkewMatrix<R>) -> Result<R, PfaffianError> {
    let n = a.size();
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    if n > MAX_EXPAND_SIZE {
        return Err(PfaffianError::TooLarge { size: n, bound: MAX_EXPAND_SIZE });
    }
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(expand_subset(a, full, &mut memo))
}

fn expand_subset<R: Ring>(a: &SkewMatrix<R>, mask: u64, memo: &mut HashMap<u64, R>) -> R {
    if mask == 0 {
        return R::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut total = R::zero();
    let mut between = 0usize;
    let mut scan = rest;
    while scan != 0 {
        let j = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let entry = a.upper(first, j);
        if !entry.is_zero() {
            let minor = expand_subset(a, rest & !(1u64 << j), memo);
            let term = entry.mul(&minor);
            total = if between.is_multiple_of(2) { total.add(&term) } else { total.sub(&term) };
        }
        between += 1;
    }
    memo.insert(mask, total.clone());
    total
}

/// Determinant of the full skew matrix by Laplace expansion along rows,
/// memoised on the set of unused columns.
pub fn determinant<R: Ring>(a: &SkewMatrix<R>) -> R {
    let n = a.size();
    assert!(n <= MAX_EXPAND_SIZE, "determinant size {n} too large");
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    det_columns(a, full, &mut memo)
}

fn det_columns<R: Ring>(a: &SkewMatrix<R>, cols: u64, memo: &mut HashMap<u64, R>) -> R {
    if cols == 0 {
        return R::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = a.size() - cols.count_ones() as usize;
    let mut total = R::zero();
    let mut position = 0usize;
    let mut scan = cols;
    while scan != 0 {
        let c = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let entry = a.get(row, c);
        if !entry.is_zero() {
            let minor = det_columns(a, cols & !(1u64 << c), memo);
            let term = entry.mul(&minor);
            total = if position.is_multiple_of(2) { total.add(&term) } else { total.sub(&term) };
        }
        position += 1;
    }
    memo.insert(cols, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{MPoly, Scalar, VarId};

    fn sym(i: usize, j: usize) -> MPoly {
        // a distinct variable per entry so the expansion is readable
        let idx = (2 * (i * 10 + j) + 1) as u32;
        MPoly::var(VarId::time(idx))
    }

    #[test]
    fn two_by_two_is_the_entry() {
        let a = SkewMatrix::from_fn(2, sym);
        assert_eq!(pf_matchsum(&a).unwrap(), sym(0, 1));
        assert_eq!(pf_expand(&a).unwrap(), sym(0, 1));
    }

    #[test]
    fn four_by_four_has_three_matchings() {
        let a = SkewMatrix::from_fn(4, sym);
        let expected = &sym(0, 1) * &sym(2, 3) - &sym(0, 2) * &sym(1, 3) + &sym(0, 3) * &sym(1, 2);
        assert_eq!(pf_matchsum(&a).unwrap(), expected);
        assert_eq!(pf_expand(&a).unwrap(), expected);
    }

    #[test]
    fn odd_size_is_an_error() {
        let a = SkewMatrix::<Scalar>::zeros(3);
        assert_eq!(pf_matchsum(&a), Err(PfaffianError::OddSize(3)));
        assert_eq!(pf_expand(&a), Err(PfaffianError::OddSize(3)));
        assert!(determinant(&SkewMatrix::from_fn(3, |i, j| Scalar::from_int((i + 2 * j) as i64))).is_zero());
    }

    #[test]
    fn empty_pfaffian_is_one() {
        let a = SkewMatrix::<Scalar>::zeros(0);
        assert_eq!(pf_expand(&a).unwrap(), Scalar::one());
        assert_eq!(pf_matchsum(&a).unwrap(), Scalar::one());
        assert_eq!(determinant(&a), Scalar::one());
    }

    #[test]
    fn zero_matrix_has_zero_pfaffian() {
        let a = SkewMatrix::<Scalar>::zeros(6);
        assert!(pf_expand(&a).unwrap().is_zero());
    }

    #[test]
    fn block_diagonal_factorises() {
        let b = [3, -2, 5, 7];
        let mut a = SkewMatrix::<Scalar>::zeros(8);
        for (k, v) in b.iter().enumerate() {
            a.set(2 * k, 2 * k + 1, Scalar::from_int(*v));
        }
        assert_eq!(pf_expand(&a).unwrap(), Scalar::from_int(3 * -2 * 5 * 7));
    }

    #[test]
    fn two_by_two_determinant_is_square() {
        let a = SkewMatrix::from_fn(2, |_, _| Scalar::ratio(-3, 2));
        assert_eq!(determinant(&a), Scalar::ratio(9, 4));
    }

    #[test]
    fn matchsum_respects_bound() {
        let a = SkewMatrix::<Scalar>::zeros(12);
        assert_eq!(pf_matchsum(&a), Err(PfaffianError::TooLarge { size: 12, bound: 10 }));
    }
}
