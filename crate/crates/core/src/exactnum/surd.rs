//! Positive radicals r^{1/k} with exact arithmetic and comparison, and
//! magnitudes that keep such a form whenever one is available.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Pow, Signed};

use super::rat::{rat_to_string, Rat};
use super::real::Real;
use super::DyadicInterval;
use crate::error::{Error, Result};

/// r^{1/k} with r > 0 rational and k ≥ 1, k minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    base: Rat,
    root: u32,
}

fn exact_root(r: &Rat, k: u32) -> Option<Rat> {
    let n = r.numer().nth_root(k);
    let d = r.denom().nth_root(k);
    (Pow::pow(&n, k) == *r.numer() && Pow::pow(&d, k) == *r.denom()).then(|| Rat::new(n, d))
}

fn small_primes(mut k: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while k > 1 {
        if k % p == 0 {
            out.push(p);
            while k % p == 0 {
                k /= p;
            }
        }
        p += 1;
    }
    out
}

impl Surd {
    pub fn new(base: Rat, root: u32) -> Result<Self> {
        if !base.is_positive() || root == 0 {
            return Err(Error::Domain(format!("surd needs base > 0 and root ≥ 1, got {base}^(1/{root})")));
        }
        Ok(Surd { base, root }.reduced())
    }

    pub fn rat(r: Rat) -> Result<Self> {
        Surd::new(r, 1)
    }

    pub fn int(v: i64) -> Self {
        Surd { base: Rat::from_integer(v.into()), root: 1 }
    }

    fn reduced(mut self) -> Self {
        for p in small_primes(self.root) {
            while self.root % p == 0 {
                match exact_root(&self.base, p) {
                    Some(b) => {
                        self.base = b;
                        self.root /= p;
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn root_index(&self) -> u32 {
        self.root
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        (self.root == 1).then_some(&self.base)
    }

    /// Both operands lifted to the common root index.
    fn lift(&self, o: &Surd) -> (Rat, Rat, u32) {
        let l = self.root.lcm(&o.root);
        (Pow::pow(&self.base, l / self.root), Pow::pow(&o.base, l / o.root), l)
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let (a, b, l) = self.lift(o);
        Surd { base: a * b, root: l }.reduced()
    }

    pub fn div(&self, o: &Surd) -> Surd {
        let (a, b, l) = self.lift(o);
        Surd { base: a / b, root: l }.reduced()
    }

    pub fn recip(&self) -> Surd {
        Surd { base: self.base.recip(), root: self.root }
    }

    pub fn powi(&self, k: u32) -> Surd {
        Surd { base: Pow::pow(&self.base, k), root: self.root }.reduced()
    }

    pub fn root(&self, k: u32) -> Surd {
        Surd { base: self.base.clone(), root: self.root * k }.reduced()
    }

    pub fn sqrt(&self) -> Surd {
        self.root(2)
    }

    /// Exact order: compares the k-th powers at the common index.
    pub fn cmp_exact(&self, o: &Surd) -> Ordering {
        let (a, b, _) = self.lift(o);
        a.cmp(&b)
    }

    pub fn max(&self, o: &Surd) -> Surd {
        if self.cmp_exact(o).is_ge() {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn to_real(&self) -> Real {
        let r = Real::rat(self.base.clone());
        if self.root == 2 {
            r.sqrt()
        } else {
            r.root(self.root)
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root {
            1 => write!(f, "{}", rat_to_string(&self.base)),
            2 => write!(f, "sqrt({})", rat_to_string(&self.base)),
            k => write!(f, "({})^(1/{k})", rat_to_string(&self.base)),
        }
    }
}

/// A positive real that carries its exact radical form when it has one.
#[derive(Clone, Debug)]
pub struct Magnitude {
    real: Real,
    surd: Option<Surd>,
}

impl Magnitude {
    pub fn from_surd(s: Surd) -> Self {
        Magnitude { real: s.to_real(), surd: Some(s) }
    }

    pub fn rat(r: Rat) -> Result<Self> {
        Ok(Magnitude::from_surd(Surd::rat(r)?))
    }

    pub fn int(v: i64) -> Self {
        Magnitude::from_surd(Surd::int(v))
    }

    /// Wraps a positive real; exact rationals become radicals.
    pub fn from_real(real: Real) -> Self {
        let surd = real.as_rat().filter(|r| r.is_positive()).map(|r| Surd { base: r.clone(), root: 1 });
        Magnitude { real, surd }
    }

    /// √x for an exact non-negative x in ℚ(√d).
    pub fn sqrt_of(x: &super::Qf2) -> Self {
        match x.as_rat().filter(|r| r.is_positive()) {
            Some(r) => Magnitude::from_surd(Surd { base: r.clone(), root: 2 }.reduced()),
            None => Magnitude { real: Real::exact(x.clone()).sqrt(), surd: None },
        }
    }

    pub fn real(&self) -> &Real {
        &self.real
    }

    pub fn surd(&self) -> Option<&Surd> {
        self.surd.as_ref()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.surd.as_ref().and_then(Surd::as_rat)
    }

    fn combine(
        &self,
        o: &Magnitude,
        fs: impl Fn(&Surd, &Surd) -> Surd,
        fr: impl Fn(&Real, &Real) -> Real,
    ) -> Magnitude {
        match (&self.surd, &o.surd) {
            (Some(a), Some(b)) => Magnitude::from_surd(fs(a, b)),
            _ => Magnitude { real: fr(&self.real, &o.real), surd: None },
        }
    }

    pub fn mul(&self, o: &Magnitude) -> Magnitude {
        self.combine(o, Surd::mul, Real::mul)
    }

    pub fn div(&self, o: &Magnitude) -> Magnitude {
        self.combine(o, Surd::div, Real::div)
    }

    pub fn max(&self, o: &Magnitude) -> Magnitude {
        self.combine(o, Surd::max, Real::max)
    }

    pub fn powi(&self, k: u32) -> Magnitude {
        match &self.surd {
            Some(s) => Magnitude::from_surd(s.powi(k)),
            None => Magnitude { real: self.real.powi(k), surd: None },
        }
    }

    pub fn root(&self, k: u32) -> Magnitude {
        match &self.surd {
            Some(s) => Magnitude::from_surd(s.root(k)),
            None => Magnitude { real: self.real.root(k), surd: None },
        }
    }

    pub fn sqrt(&self) -> Magnitude {
        self.root(2)
    }

    /// Exact when both carry radicals; otherwise decided by enclosures.
    pub fn cmp(&self, o: &Magnitude, max_bits: u32) -> Result<Ordering> {
        if let (Some(a), Some(b)) = (&self.surd, &o.surd) {
            return Ok(a.cmp_exact(b));
        }
        Ok(self.real.sub(&o.real).sign(max_bits)?.cmp(&0))
    }

    pub fn le(&self, o: &Magnitude, max_bits: u32) -> Result<bool> {
        Ok(self.cmp(o, max_bits)?.is_le())
    }

    pub fn enclose(&self, bits: u32) -> Result<DyadicInterval> {
        self.real.enclose(bits)
    }

    /// A rational upper bound within about 2^-bits (exact when rational).
    pub fn upper(&self, bits: u32) -> Result<Rat> {
        match self.as_rat() {
            Some(r) => Ok(r.clone()),
            None => Ok(self.enclose(bits)?.hi().clone()),
        }
    }

    /// A rational lower bound within about 2^-bits (exact when rational).
    pub fn lower(&self, bits: u32) -> Result<Rat> {
        match self.as_rat() {
            Some(r) => Ok(r.clone()),
            None => Ok(self.enclose(bits)?.lo().clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(53)
            .map(|iv| {
                let mid = (iv.lo() + iv.hi()) / Rat::from_integer(2.into());
                num_traits::ToPrimitive::to_f64(&mid).unwrap_or(f64::NAN)
            })
            .unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.surd {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "{}", self.real),
        }
    }
}

impl From<Surd> for Magnitude {
    fn from(s: Surd) -> Self {
        Magnitude::from_surd(s)
    }
}
