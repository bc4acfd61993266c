//! Row reduction over Q(√2).

use crate::polycore::Scalar;

/// Reduces `rows` in place to reduced row-echelon form; returns pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                *x -= &(&factor * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// A basis of `{x : A x = 0}` where `A` has the given rows.
pub(crate) fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); ncols];
            x[f] = Scalar::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -&row[f];
            }
            x
        })
        .collect()
}
