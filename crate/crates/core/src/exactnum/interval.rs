use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{rat_ceil, rat_floor, rat_to_string, Rat};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
///
/// Endpoints produced by roots and outward rounding are dyadic.
#[derive(Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Rat,
    hi: Rat,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// Certified enclosure of the non-negative `k`-th root of `r` with width ≤ 2^-bits.
fn root_enclosure(r: &Rat, k: u32, bits: u32) -> Result<DyadicInterval> {
    if r.is_negative() {
        return Err(Error::Domain("root of a negative number".into()));
    }
    let scale = pow2(bits);
    let scaled = r * Rat::from_integer(pow2(k * bits));
    let n = rat_floor(&scaled);
    let s = n.nth_root(k);
    let lo = Rat::new(s.clone(), scale.clone());
    let exact = scaled.is_integer() && s.pow(k) == n;
    let hi = if exact { lo.clone() } else { Rat::new(s + 1, scale) };
    Ok(DyadicInterval { lo, hi })
}

/// Certified dyadic enclosure of √r: `lo² ≤ r ≤ hi²`, `hi − lo ≤ 2^-bits`.
pub fn sqrt_enclosure(r: &Rat, bits: u32) -> Result<DyadicInterval> {
    root_enclosure(r, 2, bits)
}

impl DyadicInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain("interval with lo > hi".into()));
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub fn point(x: Rat) -> Self {
        DyadicInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            DyadicInterval { lo: b, hi: a }
        } else {
            DyadicInterval { lo: a, hi: b }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain("reciprocal of an interval containing 0".into()));
        }
        Ok(DyadicInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            let hi = if -&self.lo > self.hi { -&self.lo } else { self.hi.clone() };
            DyadicInterval { lo: Rat::zero(), hi }
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        DyadicInterval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        DyadicInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = DyadicInterval::point(Rat::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        if k % 2 == 0 && self.contains_zero() {
            acc.lo = Rat::zero();
        }
        acc
    }

    /// Enclosure of the `k`-th root of a non-negative interval.
    pub fn root(&self, k: u32, bits: u32) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::Domain("root of a negative interval".into()));
        }
        let lo = if self.lo.is_positive() { self.lo.clone() } else { Rat::zero() };
        let l = root_enclosure(&lo, k, bits)?;
        let h = root_enclosure(&self.hi, k, bits)?;
        Ok(DyadicInterval { lo: l.lo, hi: h.hi })
    }

    pub fn sqrt(&self, bits: u32) -> Result<Self> {
        self.root(2, bits)
    }

    /// Rounds endpoints outward onto the 2^-bits grid (exact endpoints on the
    /// grid stay put), keeping numerators from growing without bound.
    pub fn round_outward(&self, bits: u32) -> Self {
        let s = Rat::from_integer(pow2(bits));
        let lo_s = &self.lo * &s;
        let hi_s = &self.hi * &s;
        if lo_s.is_integer() && hi_s.is_integer() {
            return self.clone();
        }
        DyadicInterval {
            lo: Rat::from_integer(rat_floor(&lo_s)) / &s,
            hi: Rat::from_integer(rat_ceil(&hi_s)) / &s,
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rat_to_string(&self.lo), rat_to_string(&self.hi))
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a DyadicInterval> for &'a DyadicInterval {
    type Output = DyadicInterval;
    fn add(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl<'a> Sub<&'a DyadicInterval> for &'a DyadicInterval {
    type Output = DyadicInterval;
    fn sub(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl<'a> Mul<&'a DyadicInterval> for &'a DyadicInterval {
    type Output = DyadicInterval;
    fn mul(self, rhs: &DyadicInterval) -> DyadicInterval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        DyadicInterval { lo, hi }
    }
}

impl Add for DyadicInterval {
    type Output = DyadicInterval;
    fn add(self, rhs: DyadicInterval) -> DyadicInterval {
        &self + &rhs
    }
}

impl Sub for DyadicInterval {
    type Output = DyadicInterval;
    fn sub(self, rhs: DyadicInterval) -> DyadicInterval {
        &self - &rhs
    }
}

impl Mul for DyadicInterval {
    type Output = DyadicInterval;
    fn mul(self, rhs: DyadicInterval) -> DyadicInterval {
        &self * &rhs
    }
}

impl Neg for DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval { lo: -self.hi, hi: -self.lo }
    }
}
