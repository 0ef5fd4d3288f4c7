//! Dense univariate polynomials over ℚ(√d) with Sturm-sequence root isolation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::qf2::Qf2;
use super::rat::{rat_ceil, Rat};

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Qf2>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Qf2>) -> Self {
        while coeffs.last().is_some_and(Qf2::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Qf2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Qf2 {
        self.coeffs.last().expect("zero polynomial")
    }

    pub fn eval(&self, x: &Qf2) -> Qf2 {
        self.coeffs.iter().rev().fold(Qf2::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        self.eval(&Qf2::from_rat(x.clone())).sign()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Qf2::from_int(i as i64))
                .collect(),
        )
    }

    fn monic(&self) -> Poly {
        let l = self.lead().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, other: &Poly) -> (Poly, Poly) {
        let dd = other.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Qf2::zero(); self.coeffs.len().saturating_sub(dd)];
        let lead = other.lead();
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / lead;
            for (i, oc) in other.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * oc);
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(Qf2::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Rational bound B with every real root in (-B, B).
    pub fn root_bound(&self) -> Rat {
        let lead = self.lead().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = rat_ceil((&c.abs() / &lead).enclose(8).hi()) + BigInt::one();
            m = m.max(Rat::from_integer(r));
        }
        let b = m + Rat::one();
        // round up to a power of two so bisection midpoints are dyadic
        let mut p = Rat::one();
        while p < b {
            p *= Rat::from_integer(2.into());
        }
        p
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(Poly::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        seq
    }
}

fn sign_changes(seq: &[Poly], x: &Rat) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in (a, b].
pub fn count_roots(seq: &[Poly], a: &Rat, b: &Rat) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

/// Isolating intervals `(lo, hi]` (or exact points with lo == hi), ascending.
pub fn isolate_real_roots(p: &Poly) -> Vec<(Rat, Rat)> {
    let p = p.squarefree();
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = p.sturm_sequence();
    let b = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && p.sign_at(&hi) == 0 {
            out.push((hi.clone(), hi));
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out
}

/// Narrows an isolating interval of a squarefree polynomial's simple root.
pub fn refine_root(p: &Poly, lo: &Rat, hi: &Rat, width: &Rat) -> (Rat, Rat) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if lo == hi || p.sign_at(&hi) == 0 {
        return (hi.clone(), hi);
    }
    let s_hi = p.sign_at(&hi);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let s = p.sign_at(&mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Characteristic polynomial det(xI − M) by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &[Vec<Qf2>]) -> Poly {
    let n = m.len();
    let mut coeffs = vec![Qf2::zero(); n + 1];
    coeffs[n] = Qf2::one();
    // M_k = M (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
    let mut mk: Vec<Vec<Qf2>> = vec![vec![Qf2::zero(); n]; n];
    for k in 1..=n {
        let mut base = mk.clone();
        for (i, row) in base.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        mk = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| &m[i][l] * &base[l][j]).sum())
                    .collect()
            })
            .collect();
        let tr: Qf2 = (0..n).map(|i| mk[i][i].clone()).sum();
        coeffs[n - k] = -(&tr / &Qf2::from_int(k as i64));
    }
    Poly::new(coeffs)
}
