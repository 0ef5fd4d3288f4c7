//! Bounded isotropic-vector search on integral forms in machine integers.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::forms::QuadForm;

/// An integral symmetric matrix, scaled from a rational form by a positive
/// constant (which does not change the isotropic vectors).
#[derive(Clone, Debug)]
pub struct IntForm {
    pub a: Vec<Vec<i128>>,
}

pub enum SearchOutcome {
    Found(Vec<i128>),
    /// No isotropic vector with all free coordinates in the box.
    Exhausted,
}

impl IntForm {
    pub fn from_form(q: &QuadForm) -> Result<Self> {
        let m = q
            .rational_matrix()
            .ok_or_else(|| Error::InvalidInput("isotropy needs a rational form".into()))?;
        let lcm = m.iter().flatten().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
        let a = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        (x * Rat::from_integer(lcm.clone()))
                            .to_integer()
                            .to_i128()
                            .filter(|v| v.abs() < 1 << 40)
                            .ok_or_else(|| Error::InvalidInput("form entries too large".into()))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(IntForm { a })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, x: &[i128]) -> i128 {
        let n = self.dim();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in 0..n {
                row += self.a[i][j] * x[j];
            }
            s += x[i] * row;
        }
        s
    }

    pub fn max_abs(&self) -> i128 {
        self.a.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// ⌈(3·max|a_ij|·n)^{(n−1)/2}⌉: if an isotropic vector exists, one exists
    /// with sup-norm at most this.
    pub fn cassels_bound(&self) -> u128 {
        let n = self.dim() as u32;
        let base = (3 * self.max_abs() * self.dim() as i128) as u128;
        let e = n - 1;
        let full = base.checked_pow(e).unwrap_or(u128::MAX);
        if e % 2 == 0 {
            base.saturating_pow(e / 2)
        } else {
            let r = isqrt_u128(full);
            if r * r == full {
                r
            } else {
                r + 1
            }
        }
    }

    /// Index of a nonzero diagonal entry to solve for, if any.
    fn pivot(&self) -> Option<usize> {
        (0..self.dim()).rev().find(|&i| self.a[i][i] != 0)
    }

    /// Solves a t² + 2L t + C = 0 over ℤ for the pivot coordinate.
    fn solve_pivot(&self, k: usize, x: &mut [i128]) -> bool {
        let n = self.dim();
        let a = self.a[k][k];
        x[k] = 0;
        let l: i128 = (0..n).filter(|&i| i != k).map(|i| self.a[i][k] * x[i]).sum();
        let c = self.eval(x);
        let disc = l * l - a * c;
        if disc < 0 {
            return false;
        }
        let Some(d) = exact_isqrt(disc) else {
            return false;
        };
        for num in [-l + d, -l - d] {
            if num % a == 0 {
                x[k] = num / a;
                return true;
            }
        }
        false
    }

    /// Searches shells ‖x'‖∞ = 1, 2, … of the non-pivot coordinates, solving
    /// for the pivot exactly. With `bound` the search is complete up to it;
    /// without, it runs until a vector is found.
    pub fn search(&self, bound: Option<u128>) -> SearchOutcome {
        let n = self.dim();
        if let Some(i) = (0..n).find(|&i| self.a[i][i] == 0) {
            let mut v = vec![0; n];
            v[i] = 1;
            return SearchOutcome::Found(v);
        }
        if n == 1 {
            return SearchOutcome::Exhausted;
        }
        let k = self.pivot().expect("nonzero diagonal");
        let free: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let m = free.len();
        let mut s: i128 = 1;
        loop {
            if bound.is_some_and(|b| s as u128 > b) {
                return SearchOutcome::Exhausted;
            }
            let mut found = None;
            for_each_shell_point(m, s, &mut |y| {
                // one representative per ± pair: first nonzero free coordinate positive
                if y.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                    return false;
                }
                let mut x = vec![0i128; n];
                for (idx, &i) in free.iter().enumerate() {
                    x[i] = y[idx];
                }
                if self.solve_pivot(k, &mut x) {
                    found = Some(x);
                    return true;
                }
                false
            });
            if let Some(x) = found {
                return SearchOutcome::Found(primitive(x));
            }
            s += 1;
        }
    }
}

/// Visits every y ∈ ℤ^m with ‖y‖∞ = s; stops when `f` returns true.
fn for_each_shell_point(m: usize, s: i128, f: &mut dyn FnMut(&[i128]) -> bool) -> bool {
    let mut y = vec![0i128; m];
    // the first coordinate attaining |y_j| = s is j; earlier ones are strictly smaller
    for j in 0..m {
        for sign in [1i128, -1] {
            y[j] = sign * s;
            if fill(&mut y, 0, j, s, f) {
                return true;
            }
        }
        y[j] = 0;
    }
    false
}

fn fill(y: &mut Vec<i128>, i: usize, j: usize, s: i128, f: &mut dyn FnMut(&[i128]) -> bool) -> bool {
    if i == y.len() {
        return f(y);
    }
    if i == j {
        return fill(y, i + 1, j, s, f);
    }
    let lim = if i < j { s - 1 } else { s };
    for v in -lim..=lim {
        y[i] = v;
        if fill(y, i + 1, j, s, f) {
            return true;
        }
    }
    y[i] = 0;
    false
}

pub fn primitive(mut x: Vec<i128>) -> Vec<i128> {
    let g = x.iter().fold(0i128, |g, &v| g.gcd(&v));
    if g > 1 {
        x.iter_mut().for_each(|v| *v /= g);
    }
    if x.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    x
}

fn isqrt_u128(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

fn exact_isqrt(n: i128) -> Option<i128> {
    let r = isqrt_u128(n as u128) as i128;
    (r * r == n).then_some(r)
}

/// Number of free-coordinate points in the box of radius `b`, saturating.
pub fn box_size(free_dims: usize, b: u128) -> u128 {
    (2 * b + 1).saturating_pow(free_dims as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(rows: &[&[i64]]) -> IntForm {
        IntForm::from_form(&QuadForm::from_ints(rows).unwrap()).unwrap()
    }

    #[test]
    fn finds_small_zeros() {
        let f = form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        match f.search(Some(f.cassels_bound())) {
            SearchOutcome::Found(v) => assert_eq!(f.eval(&v), 0),
            SearchOutcome::Exhausted => panic!("x²+y²−z² is isotropic"),
        }
    }

    #[test]
    fn exhausts_anisotropic() {
        let f = form(&[&[1, 0], &[0, -2]]);
        assert_eq!(f.cassels_bound(), 4);
        assert!(matches!(f.search(Some(f.cassels_bound())), SearchOutcome::Exhausted));
        let f = form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -3]]);
        assert!(matches!(f.search(Some(f.cassels_bound())), SearchOutcome::Exhausted));
    }

    #[test]
    fn shell_enumeration_counts() {
        // |{y ∈ ℤ³ : ‖y‖∞ = 2}| = 5³ − 3³
        let mut count = 0;
        for_each_shell_point(3, 2, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 125 - 27);
    }
}
