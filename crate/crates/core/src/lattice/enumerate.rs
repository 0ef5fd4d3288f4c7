//! Fincke–Pohst enumeration with exact comparisons in ℚ(√d).

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::lll::{gram_schmidt, GramSchmidt};
use crate::error::{Error, Result};
use crate::exactnum::Qf2;
use crate::linalg::Mat;

/// Integer coordinates and their exact squared norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm_sq: Qf2,
}

/// Order used for every enumeration result: norm² ascending, then
/// coordinates lexicographically descending.
pub fn canonical_order(a: &ShortVector, b: &ShortVector) -> Ordering {
    a.norm_sq.cmp_exact(&b.norm_sq).then_with(|| b.coords.cmp(&a.coords))
}

/// Flips v so that its first nonzero coordinate is positive.
pub fn canonical_sign(v: &mut [i64]) {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

struct Search<'a> {
    gs: &'a GramSchmidt,
    r_sq: &'a Qf2,
    limit: usize,
}

impl Search<'_> {
    /// r·(x − c)² for the level with GS norm r.
    fn term(r: &Qf2, x: i64, c: &Qf2) -> Qf2 {
        let t = &Qf2::from_int(x) - c;
        &(&t * &t) * r
    }

    /// Contiguous integer range {x : r(x − c)² ≤ budget}, found by an
    /// estimated start followed by exact walking.
    fn range(r: &Qf2, c: &Qf2, budget: &Qf2, nonneg: bool) -> Option<(i64, i64)> {
        if budget.sign() < 0 {
            return None;
        }
        let fits = |x: i64| Self::term(r, x, c).cmp_exact(budget).is_le();
        let x0 = c.round().to_i64().expect("enumeration center fits i64");
        let mid = if nonneg { x0.max(0) } else { x0 };
        if !fits(mid) {
            // the only candidate, when c < 0 under the sign constraint, is 0
            return None;
        }
        let w = (budget.to_f64() / r.to_f64()).sqrt();
        let cf = c.to_f64();
        let mut hi = ((cf + w).floor() as i64).max(mid);
        while hi > mid && !fits(hi) {
            hi -= 1;
        }
        while fits(hi + 1) {
            hi += 1;
        }
        let mut lo = ((cf - w).ceil() as i64).min(mid);
        if nonneg {
            lo = lo.max(0);
        }
        while lo < mid && !fits(lo) {
            lo += 1;
        }
        while (!nonneg || lo > 0) && fits(lo - 1) {
            lo -= 1;
        }
        Some((lo, hi))
    }

    /// Center of level i given coordinates x[i+1..].
    fn center(&self, i: usize, x: &[i64]) -> Qf2 {
        let n = x.len();
        let mut c = Qf2::zero();
        for j in i + 1..n {
            if x[j] != 0 {
                c = &c - &(&self.gs.mu[j][i] * &Qf2::from_int(x[j]));
            }
        }
        c
    }

    /// Depth-first search below level `i`; `zero_above` means x[i+1..] = 0.
    fn descend(
        &self,
        i: usize,
        x: &mut Vec<i64>,
        partial: &Qf2,
        zero_above: bool,
        out: &mut Vec<ShortVector>,
    ) -> Result<()> {
        let c = self.center(i, x);
        let budget = self.r_sq - partial;
        let Some((lo, hi)) = Self::range(&self.gs.r[i], &c, &budget, zero_above) else {
            return Ok(());
        };
        for v in lo..=hi {
            if zero_above && v == 0 && i == 0 {
                continue;
            }
            x[i] = v;
            let s = partial + &Self::term(&self.gs.r[i], v, &c);
            if i == 0 {
                out.push(ShortVector { coords: x.clone(), norm_sq: s });
                if out.len() > self.limit {
                    return Err(Error::EnumerationLimit(self.limit));
                }
            } else {
                self.descend(i - 1, x, &s, zero_above && v == 0, out)?;
            }
        }
        x[i] = 0;
        Ok(())
    }
}

/// All nonzero x ∈ ℤⁿ with xᵀgx ≤ r_sq, one per ± pair, in coordinates of
/// the basis whose Gram matrix is `g`. Order and sign are not canonical.
pub fn enumerate_gram(g: &Mat, r_sq: &Qf2, limit: usize) -> Result<Vec<ShortVector>> {
    let n = g.len();
    if n == 0 || r_sq.sign() <= 0 {
        return Ok(Vec::new());
    }
    let gs = gram_schmidt(g);
    let search = Search { gs: &gs, r_sq, limit };
    let top = n - 1;
    let Some((lo, hi)) = Search::range(&gs.r[top], &Qf2::zero(), r_sq, true) else {
        return Ok(Vec::new());
    };
    let chunks: Vec<Result<Vec<ShortVector>>> = (lo..=hi)
        .into_par_iter()
        .map(|v| {
            let mut x = vec![0; n];
            x[top] = v;
            let s = Search::term(&gs.r[top], v, &Qf2::zero());
            let mut out = Vec::new();
            if top == 0 {
                if v != 0 {
                    out.push(ShortVector { coords: x, norm_sq: s });
                }
            } else {
                search.descend(top - 1, &mut x, &s, v == 0, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for c in chunks {
        all.extend(c?);
        if all.len() > limit {
            return Err(Error::EnumerationLimit(limit));
        }
    }
    Ok(all)
}
