use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Int;

pub type IntMat = Vec<Vec<Int>>;

/// Column Hermite normal form of an n×m integer matrix of rank n.
///
/// Returns the n×n lower-triangular matrix H spanning the same ℤ-module as
/// the columns of `m`, with positive diagonal and 0 ≤ H[i][j] < H[i][i] for j < i.
pub fn hnf(m: &IntMat) -> Result<IntMat> {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    for i in 0..n {
        // gcd-combine columns i..cols on row i into column i
        for j in i + 1..cols {
            if a[i][j].is_zero() {
                continue;
            }
            if a[i][i].is_zero() {
                swap_cols(&mut a, i, j);
                continue;
            }
            let ext = a[i][i].extended_gcd(&a[i][j]);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let u = &a[i][i] / &g;
            let v = &a[i][j] / &g;
            for row in a.iter_mut() {
                let (ci, cj) = (row[i].clone(), row[j].clone());
                row[i] = &x * &ci + &y * &cj;
                row[j] = &u * &cj - &v * &ci;
            }
        }
        if a[i][i].is_zero() {
            return Err(Error::RankDeficient);
        }
        if a[i][i].is_negative() {
            for row in a.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
        for j in 0..i {
            let f = a[i][j].div_floor(&a[i][i]);
            if f.is_zero() {
                continue;
            }
            for row in a.iter_mut() {
                let t = &f * &row[i];
                row[j] -= t;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[..n].to_vec()).collect())
}

fn swap_cols(a: &mut IntMat, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

pub fn int_identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}
