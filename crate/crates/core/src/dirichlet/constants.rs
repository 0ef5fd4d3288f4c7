//! Hermite constants and the geometry-of-numbers constants built on them.
//!
//! Every use of γₙ in a threshold is monotone, so the Hermite upper bound
//! beyond dimension 8 only enlarges radii and stated bounds.

use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Rat, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSource {
    Exact,
    HermiteBound,
}

/// γₙⁿ for 1 ≤ n ≤ 8.
const GAMMA_POW: [(i64, i64); 8] = [(1, 1), (4, 3), (2, 1), (4, 1), (8, 1), (64, 3), (64, 1), (256, 1)];

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// γₙ: exact for n ≤ 8, Hermite's bound (4/3)^{(n−1)/2} beyond.
pub fn hermite(n: usize) -> Result<(Surd, GammaSource)> {
    match n {
        0 => Err(Error::Domain("Hermite constant needs n ≥ 1".into())),
        1..=8 => {
            let (a, b) = GAMMA_POW[n - 1];
            Ok((Surd::new(r(a, b), n as u32)?, GammaSource::Exact))
        }
        _ => Ok((Surd::new(Pow::pow(r(4, 3), n as u32 - 1), 2)?, GammaSource::HermiteBound)),
    }
}

/// c*(n) = γₙ^{n/2}, the common value of the Bombieri–Vaaler and
/// Roy–Thunder constants over ℚ; c*(0) = 1.
pub fn c_star(n: usize) -> Result<Surd> {
    if n == 0 {
        return Ok(Surd::int(1));
    }
    Ok(hermite(n)?.0.powi(n as u32).sqrt())
}

pub fn gamma_source(n: usize) -> GammaSource {
    if n <= 8 {
        GammaSource::Exact
    } else {
        GammaSource::HermiteBound
    }
}

/// H_a = 1 + 1/2 + ⋯ + 1/a.
pub fn harmonic(a: u64) -> Rat {
    (1..=a).map(|k| Rat::new(1.into(), k.into())).fold(Rat::from_integer(0.into()), |s, x| s + x)
}

/// a·H_a + b·H_b ≤ (a+b−1)·H_{a+b−1} + 1, decided exactly.
pub fn harmonic_inequality_holds(a: u64, b: u64) -> bool {
    assert!(a >= 1 && b >= 1);
    let lhs = harmonic(a) * Rat::from_integer(a.into()) + harmonic(b) * Rat::from_integer(b.into());
    let m = a + b - 1;
    lhs <= harmonic(m) * Rat::from_integer(m.into()) + Rat::one()
}

/// log c*_{ℚ̄}(n) = (n/2)(H_n − 1), exact.
pub fn qbar_log_constant(n: u64) -> Rat {
    if n <= 1 {
        return Rat::from_integer(0.into());
    }
    Rat::new(n.into(), 2.into()) * (harmonic(n) - Rat::one())
}

/// One row of the product-constant comparison for (n, i).
#[derive(Clone, Debug)]
pub struct ConstantsRow {
    pub n: usize,
    pub i: usize,
    /// c^BV(i+1)·c^Λ(n−i) over ℚ.
    pub product: Surd,
    /// (i+1)^{(i+1)/2}(n−i)^{(n−i)/2}δ^{(n+1)/2}, from c_K(m) ≤ (mδ)^{m/2}.
    pub field_bound: Surd,
    /// n^{n/2}δ^{(n+1)/2}.
    pub target: Surd,
}

impl ConstantsRow {
    pub fn holds(&self) -> bool {
        self.product.cmp_exact(&self.field_bound).is_le() && self.field_bound.cmp_exact(&self.target).is_le()
    }
}

/// c^BV(i+1)c^Λ(n−i) against n^{n/2}δ^{(n+1)/2} for a root discriminant δ ≥ 1.
pub fn constants_row(n: usize, i: usize, delta: &Rat) -> Result<ConstantsRow> {
    if n == 0 || i >= n {
        return Err(Error::Domain(format!("need n ≥ 1 and i < n, got n={n}, i={i}")));
    }
    let pow_half = |m: usize| Surd::int(m as i64).powi(m as u32).sqrt();
    let delta_part = Surd::rat(delta.clone())?.powi(n as u32 + 1).sqrt();
    Ok(ConstantsRow {
        n,
        i,
        product: c_star(i + 1)?.mul(&c_star(n - i)?),
        field_bound: pow_half(i + 1).mul(&pow_half(n - i)).mul(&delta_part),
        target: pow_half(n).mul(&delta_part),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite(1).unwrap().0, Surd::int(1));
        let (g2, src) = hermite(2).unwrap();
        assert_eq!(g2.powi(2).as_rat(), Some(&rat(4, 3)));
        assert_eq!(src, GammaSource::Exact);
        assert_eq!(hermite(8).unwrap().0, Surd::int(2));
        let (g9, src) = hermite(9).unwrap();
        assert_eq!(g9.as_rat(), Some(&rat(256, 81)));
        assert_eq!(src, GammaSource::HermiteBound);
        assert!(hermite(0).is_err());
    }

    #[test]
    fn gamma_two_by_reduced_binary_forms() {
        // max over reduced forms [a,b,c], 0 ≤ b ≤ a ≤ c, of min²/det = a²/(ac − b²/4)
        let mut best = rat(0, 1);
        for a in 1..=12i64 {
            for b in 0..=a {
                for c in a..=12 {
                    let det = rat(a * c, 1) - rat(b * b, 4);
                    let v = rat(a * a, 1) / det;
                    if v > best {
                        best = v;
                    }
                }
            }
        }
        assert_eq!(best, rat(4, 3));
    }

    #[test]
    fn hermite_bound_dominates_exact_values() {
        for n in 1..=8 {
            let exact = hermite(n).unwrap().0;
            let bound = Surd::new(Pow::pow(rat(4, 3), n as u32 - 1), 2).unwrap();
            assert!(exact.cmp_exact(&bound).is_le(), "n={n}");
        }
    }

    #[test]
    fn c_star_values() {
        assert_eq!(c_star(0).unwrap(), Surd::int(1));
        assert_eq!(c_star(3).unwrap(), Surd::new(rat(2, 1), 2).unwrap());
        assert_eq!(c_star(4).unwrap(), Surd::int(2));
        assert_eq!(c_star(8).unwrap(), Surd::int(16));
    }

    #[test]
    fn harmonic_inequality_small() {
        assert_eq!(harmonic(3), rat(11, 6));
        for a in 1..=12 {
            for b in 1..=12 {
                assert!(harmonic_inequality_holds(a, b), "a={a}, b={b}");
            }
        }
        // the product inequality over ℚ̄ in log form is the harmonic inequality
        for n in 1..=12u64 {
            for i in 0..n {
                let lhs = qbar_log_constant(i + 1) + qbar_log_constant(n - i);
                assert!(lhs <= qbar_log_constant(n), "n={n}, i={i}");
            }
        }
    }

    #[test]
    fn product_constants_small() {
        for n in 1..=10 {
            for i in 0..n {
                assert!(constants_row(n, i, &rat(1, 1)).unwrap().holds(), "n={n}, i={i}");
            }
        }
    }
}
