//! Exact LLL reduction driven by a Gram matrix over ℚ(√d).

use num_traits::{ToPrimitive, Zero};

use super::hnf::{int_identity, IntMat};
use crate::error::{Error, Result};
use crate::exactnum::{Int, Qf2, Rat};
use crate::linalg::{self, Mat};

/// Gram–Schmidt data of a Gram matrix: `mu[i][j]` (j < i) and `r[i] = ‖b_i*‖²`.
#[derive(Clone, Debug)]
pub struct GramSchmidt {
    pub mu: Mat,
    pub r: Vec<Qf2>,
}

pub fn gram_schmidt(g: &Mat) -> GramSchmidt {
    let n = g.len();
    let mut mu = linalg::zeros(n, n);
    let mut r = vec![Qf2::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s = &s - &(&(&mu[j][k] * &mu[i][k]) * &r[k]);
            }
            mu[i][j] = &s / &r[j];
        }
        let mut s = g[i][i].clone();
        for k in 0..i {
            s = &s - &(&(&mu[i][k] * &mu[i][k]) * &r[k]);
        }
        r[i] = s;
        mu[i][i] = Qf2::one();
    }
    GramSchmidt { mu, r }
}

/// b_k ← b_k − c·b_j applied to the Gram matrix and the transform.
fn sub_multiple(g: &mut Mat, u: &mut IntMat, k: usize, j: usize, c: &Int) {
    let cq = Qf2::from_rat(Rat::from_integer(c.clone()));
    for row in g.iter_mut() {
        let t = &cq * &row[j];
        row[k] = &row[k] - &t;
    }
    let row_j = g[j].clone();
    for (x, y) in g[k].iter_mut().zip(&row_j) {
        *x = &*x - &(&cq * y);
    }
    for row in u.iter_mut() {
        let t = c * &row[j];
        row[k] -= t;
    }
}

fn swap(g: &mut Mat, u: &mut IntMat, a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

/// LLL-reduces the lattice with coordinate Gram matrix `g`.
///
/// Returns `(U, UᵀgU)` with U unimodular; the new basis satisfies size
/// reduction |μ_ij| ≤ 1/2 and the Lovász condition with parameter `delta`.
pub fn lll_gram(g: &Mat, delta: &Rat) -> Result<(IntMat, Mat)> {
    let quarter = Rat::new(1.into(), 4.into());
    if delta <= &quarter || delta >= &Rat::from_integer(1.into()) {
        return Err(Error::InvalidInput("LLL delta must lie in (1/4, 1)".into()));
    }
    if !linalg::is_positive_definite(g) {
        return Err(Error::NotPositiveDefinite);
    }
    let n = g.len();
    let mut g = g.clone();
    let mut u = int_identity(n);
    let delta = Qf2::from_rat(delta.clone());
    let mut gs = gram_schmidt(&g);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let c = gs.mu[k][j].round();
            if c.is_zero() {
                continue;
            }
            sub_multiple(&mut g, &mut u, k, j, &c);
            let cq = Qf2::from_rat(Rat::from_integer(c));
            for l in 0..=j {
                gs.mu[k][l] = &gs.mu[k][l] - &(&cq * &gs.mu[j][l]);
            }
        }
        let m = &gs.mu[k][k - 1];
        let bound = &(&delta - &(m * m)) * &gs.r[k - 1];
        if gs.r[k].cmp_exact(&bound).is_ge() {
            k += 1;
        } else {
            swap(&mut g, &mut u, k, k - 1);
            gs = gram_schmidt(&g);
            k = (k - 1).max(1);
        }
    }
    Ok((u, g))
}

pub fn int_mat_to_qf2(u: &IntMat) -> Mat {
    u.iter()
        .map(|r| r.iter().map(|x| Qf2::from_rat(Rat::from_integer(x.clone()))).collect())
        .collect()
}

pub fn int_mat_to_i64(u: &IntMat) -> Vec<Vec<i64>> {
    u.iter().map(|r| r.iter().map(|x| x.to_i64().expect("transform fits i64")).collect()).collect()
}
