//! Exact Gaussian elimination over `Q`.

use crate::exact::{Rat, RatVec};

/// Reduced row echelon form of `rows`, each of length `cols`. Returns the
/// reduced rows and the pivot column of each nonzero row.
fn rref(mut rows: Vec<Vec<Rat>>, cols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Rat>], cols: usize) -> usize {
    rref(rows.to_vec(), cols).1.len()
}

/// A basis of `{x : A x = 0}` where `A` has the given rows.
pub fn kernel(rows: &[Vec<Rat>], cols: usize) -> Vec<RatVec> {
    let (reduced, pivots) = rref(rows.to_vec(), cols);
    let free = (0..cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut x = vec![Rat::zero(); cols];
        x[f] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = -&reduced[row][f];
        }
        RatVec::new(x)
    })
    .collect()
}
