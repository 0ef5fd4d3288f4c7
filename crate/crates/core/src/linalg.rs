//! Small dense matrices over ℚ(√d), stored row-major as `Vec<Vec<Qf2>>`.

use crate::error::{Error, Result};
use crate::exactnum::{Qf2, Rat};

pub type Mat = Vec<Vec<Qf2>>;
pub type Vector = Vec<Qf2>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| Qf2::from_int((i == j) as i64)).collect())
        .collect()
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Qf2::zero(); c]; r]
}

pub fn from_rat(m: &[Vec<Rat>]) -> Mat {
    m.iter().map(|r| r.iter().map(Qf2::from).collect()).collect()
}

pub fn from_ints(m: &[&[i64]]) -> Mat {
    m.iter().map(|r| r.iter().map(|&v| Qf2::from_int(v)).collect()).collect()
}

pub fn to_rat(m: &Mat) -> Option<Vec<Vec<Rat>>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.as_rat().cloned()).collect())
        .collect()
}

pub fn transpose(m: &Mat) -> Mat {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Mat, v: &[Qf2]) -> Vector {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Qf2], b: &[Qf2]) -> Qf2 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// xᵀ M y.
pub fn bilinear(m: &Mat, x: &[Qf2], y: &[Qf2]) -> Qf2 {
    dot(x, &mul_vec(m, y))
}

/// Bᵀ M B: the Gram matrix of M on the columns of B.
pub fn congruence(m: &Mat, b: &Mat) -> Mat {
    mul(&transpose(b), &mul(m, b))
}

pub fn column(m: &Mat, j: usize) -> Vector {
    m.iter().map(|r| r[j].clone()).collect()
}

pub fn from_columns(cols: &[Vector]) -> Mat {
    let n = cols.first().map_or(0, Vec::len);
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

pub fn is_symmetric(m: &Mat) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Determinant by Gaussian elimination over the field.
pub fn det(m: &Mat) -> Qf2 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Qf2::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Qf2::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det = &det * &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    det
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..2 * n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sylvester's criterion with exact signs.
pub fn is_positive_definite(m: &Mat) -> bool {
    let n = m.len();
    is_symmetric(m)
        && (1..=n).all(|k| {
            let minor: Mat = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(&minor).sign() > 0
        })
}

/// Basis (as columns) of the right null space of `m`.
pub fn null_space(m: &Mat, ncols: usize) -> Vec<Vector> {
    let mut a = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for k in 0..ncols {
            a[r][k] = &a[r][k] / &piv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &a[r][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Qf2::zero(); ncols];
            v[free] = Qf2::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    n - null_space(&vectors.to_vec(), n).len()
}
