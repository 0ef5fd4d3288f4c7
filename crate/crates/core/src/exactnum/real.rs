//! Certified real expressions: exact leaves in ℚ(√d), algebraic roots, and
//! radicals, evaluated to enclosures at escalating precision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::DyadicInterval;
use super::poly::{refine_root, Poly};
use super::qf2::Qf2;
use super::rat::{is_square, simplest_between, Rat};
use crate::error::{Error, Result};

/// A real root of a squarefree polynomial, isolated in `(lo, hi]`.
#[derive(Clone, Debug)]
pub struct RootOf {
    poly: Poly,
    lo: Rat,
    hi: Rat,
    label: String,
}

impl RootOf {
    /// Rational roots with moderate denominators are detected and made exact.
    pub fn new(poly: Poly, lo: Rat, hi: Rat, label: impl Into<String>) -> Self {
        let poly = poly.squarefree();
        let width = Rat::new(BigInt::one(), BigInt::one() << 64u32);
        let (lo, hi) = refine_root(&poly, &lo, &hi, &width);
        let guess = simplest_between(&lo, &hi);
        let (lo, hi) = if poly.sign_at(&guess) == 0 { (guess.clone(), guess) } else { (lo, hi) };
        RootOf { poly, lo, hi, label: label.into() }
    }

    pub fn enclose(&self, bits: u32) -> DyadicInterval {
        let width = Rat::new(BigInt::one(), BigInt::one() << bits);
        let (lo, hi) = refine_root(&self.poly, &self.lo, &self.hi, &width);
        DyadicInterval::new(lo, hi).expect("ordered")
    }

    pub fn exact(&self) -> Option<Rat> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }
}

#[derive(Debug)]
enum Node {
    Exact(Qf2),
    Root(RootOf),
    Add(Real, Real),
    Sub(Real, Real),
    Mul(Real, Real),
    Div(Real, Real),
    Root_(Real, u32),
    Pow(Real, u32),
    Max(Real, Real),
    Min(Real, Real),
    Abs(Real),
}

/// Immutable, cheaply clonable certified real number.
#[derive(Clone, Debug)]
pub struct Real(Arc<Node>);

impl Real {
    fn node(n: Node) -> Self {
        Real(Arc::new(n))
    }

    pub fn exact(x: impl Into<Qf2>) -> Self {
        Real::node(Node::Exact(x.into()))
    }

    pub fn rat(r: Rat) -> Self {
        Real::exact(Qf2::from_rat(r))
    }

    pub fn int(v: i64) -> Self {
        Real::exact(Qf2::from_int(v))
    }

    pub fn root_of(r: RootOf) -> Self {
        match r.exact() {
            Some(x) => Real::rat(x),
            None => Real::node(Node::Root(r)),
        }
    }

    pub fn as_exact(&self) -> Option<&Qf2> {
        match &*self.0 {
            Node::Exact(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.as_exact().and_then(Qf2::as_rat)
    }

    fn both_exact<'a>(a: &'a Real, b: &'a Real) -> Option<(&'a Qf2, &'a Qf2)> {
        match (a.as_exact(), b.as_exact()) {
            (Some(x), Some(y)) if x.compatible(y) => Some((x, y)),
            _ => None,
        }
    }

    pub fn add(&self, o: &Real) -> Real {
        match Real::both_exact(self, o) {
            Some((x, y)) => Real::exact(x + y),
            None => Real::node(Node::Add(self.clone(), o.clone())),
        }
    }

    pub fn sub(&self, o: &Real) -> Real {
        match Real::both_exact(self, o) {
            Some((x, y)) => Real::exact(x - y),
            None => Real::node(Node::Sub(self.clone(), o.clone())),
        }
    }

    pub fn mul(&self, o: &Real) -> Real {
        match Real::both_exact(self, o) {
            Some((x, y)) => Real::exact(x * y),
            None => Real::node(Node::Mul(self.clone(), o.clone())),
        }
    }

    pub fn div(&self, o: &Real) -> Real {
        match Real::both_exact(self, o) {
            Some((x, y)) if !y.is_zero() => Real::exact(x / y),
            _ => Real::node(Node::Div(self.clone(), o.clone())),
        }
    }

    pub fn neg(&self) -> Real {
        Real::int(0).sub(self)
    }

    pub fn powi(&self, k: u32) -> Real {
        match self.as_exact() {
            Some(x) => Real::exact(x.pow(k)),
            None if k == 1 => self.clone(),
            None => Real::node(Node::Pow(self.clone(), k)),
        }
    }

    /// Non-negative `k`-th root (argument must be non-negative).
    pub fn root(&self, k: u32) -> Real {
        if k == 1 {
            return self.clone();
        }
        if let Some(r) = self.as_rat() {
            if !r.is_negative() {
                if let Some(s) = exact_root(r, k) {
                    return Real::rat(s);
                }
            }
        }
        Real::node(Node::Root_(self.clone(), k))
    }

    pub fn sqrt(&self) -> Real {
        if let Some(x) = self.as_exact() {
            if let Some(r) = x.as_rat() {
                if let Some(s) = is_square(r) {
                    return Real::rat(s);
                }
                if !r.is_negative() {
                    // √(p/q) = √(pq)/q, expressed in ℚ(√d) when pq is not a square
                    let pq = r.numer() * r.denom();
                    if let Some(d) = u64::try_from(pq.clone()).ok().filter(|&d| d < 1 << 40) {
                        if let Ok(s) = Qf2::new(Rat::zero(), Rat::new(1.into(), r.denom().clone()), d) {
                            return Real::exact(s);
                        }
                    }
                }
            }
        }
        self.root(2)
    }

    pub fn max(&self, o: &Real) -> Real {
        if let Some((x, y)) = Real::both_exact(self, o) {
            return Real::exact(if x.cmp_exact(y).is_ge() { x.clone() } else { y.clone() });
        }
        Real::node(Node::Max(self.clone(), o.clone()))
    }

    pub fn min(&self, o: &Real) -> Real {
        if let Some((x, y)) = Real::both_exact(self, o) {
            return Real::exact(if x.cmp_exact(y).is_le() { x.clone() } else { y.clone() });
        }
        Real::node(Node::Min(self.clone(), o.clone()))
    }

    pub fn abs(&self) -> Real {
        match self.as_exact() {
            Some(x) => Real::exact(x.abs()),
            None => Real::node(Node::Abs(self.clone())),
        }
    }

    /// Enclosure whose leaves are refined to roughly `bits` of absolute precision.
    pub fn enclose(&self, bits: u32) -> Result<DyadicInterval> {
        let g = bits + 16;
        let iv = match &*self.0 {
            Node::Exact(x) => return Ok(x.enclose(g)),
            Node::Root(r) => return Ok(r.enclose(g)),
            Node::Add(a, b) => &a.enclose(bits)? + &b.enclose(bits)?,
            Node::Sub(a, b) => &a.enclose(bits)? - &b.enclose(bits)?,
            Node::Mul(a, b) => &a.enclose(bits)? * &b.enclose(bits)?,
            Node::Div(a, b) => a.enclose(bits)?.div(&b.enclose(bits)?).map_err(|_| {
                Error::Undecidable { what: format!("division by {b}"), bits }
            })?,
            Node::Root_(a, k) => a.enclose(bits)?.root(*k, g)?,
            Node::Pow(a, k) => a.enclose(bits)?.powi(*k),
            Node::Max(a, b) => a.enclose(bits)?.max(&b.enclose(bits)?),
            Node::Min(a, b) => a.enclose(bits)?.min(&b.enclose(bits)?),
            Node::Abs(a) => a.enclose(bits)?.abs(),
        };
        Ok(iv.round_outward(g))
    }

    /// Exact sign, refining up to `max_bits`; fails loudly when still undecided.
    pub fn sign(&self, max_bits: u32) -> Result<i8> {
        if let Some(x) = self.as_exact() {
            return Ok(x.sign());
        }
        let mut bits = 64;
        loop {
            let iv = match self.enclose(bits) {
                Ok(iv) => iv,
                Err(Error::Undecidable { .. }) if bits < max_bits => {
                    bits = (bits * 2).min(max_bits);
                    continue;
                }
                Err(e) => return Err(e),
            };
            if iv.lo().is_positive() {
                return Ok(1);
            }
            if iv.hi().is_negative() {
                return Ok(-1);
            }
            if iv.is_point() {
                return Ok(0);
            }
            if bits >= max_bits {
                return Err(Error::Undecidable { what: format!("sign of {self}"), bits });
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    /// Decides `self <= other`.
    pub fn le(&self, other: &Real, max_bits: u32) -> Result<bool> {
        Ok(self.sub(other).sign(max_bits)? <= 0)
    }

    /// Decides `self < other`.
    pub fn lt(&self, other: &Real, max_bits: u32) -> Result<bool> {
        Ok(self.sub(other).sign(max_bits)? < 0)
    }
}

fn exact_root(r: &Rat, k: u32) -> Option<Rat> {
    let n = r.numer().nth_root(k);
    let d = r.denom().nth_root(k);
    (n.pow(k) == *r.numer() && d.pow(k) == *r.denom()).then(|| Rat::new(n, d))
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Exact(x) => write!(f, "{x}"),
            Node::Root(r) => write!(f, "{}", r.label),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "{a}*{b}"),
            Node::Div(a, b) => write!(f, "({a})/({b})"),
            Node::Root_(a, 2) => write!(f, "sqrt({a})"),
            Node::Root_(a, k) => write!(f, "root{k}({a})"),
            Node::Pow(a, k) => write!(f, "({a})^{k}"),
            Node::Max(a, b) => write!(f, "max({a}, {b})"),
            Node::Min(a, b) => write!(f, "min({a}, {b})"),
            Node::Abs(a) => write!(f, "|{a}|"),
        }
    }
}

impl From<Qf2> for Real {
    fn from(x: Qf2) -> Self {
        Real::exact(x)
    }
}

impl From<Rat> for Real {
    fn from(r: Rat) -> Self {
        Real::rat(r)
    }
}

impl Zero for Real {
    fn zero() -> Self {
        Real::int(0)
    }
    fn is_zero(&self) -> bool {
        self.as_exact().is_some_and(Qf2::is_zero)
    }
}

impl std::ops::Add for Real {
    type Output = Real;
    fn add(self, o: Real) -> Real {
        Real::add(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    const BITS: u32 = 4096;

    #[test]
    fn sqrt_folds_to_field_element() {
        let s = Real::rat(rat(1, 2)).sqrt();
        assert_eq!(s.as_exact().unwrap().d(), 2);
        let x = s.mul(&s);
        assert_eq!(x.as_rat(), Some(&rat(1, 2)));
    }

    #[test]
    fn mixed_radicals_compare() {
        // √2·√3 vs √6 + 1/1000
        let a = Real::int(2).sqrt().mul(&Real::int(3).sqrt());
        let b = Real::int(6).sqrt().add(&Real::rat(rat(1, 1000)));
        assert!(a.lt(&b, BITS).unwrap());
        assert!(!b.le(&a, BITS).unwrap());
    }

    #[test]
    fn undecidable_is_loud() {
        // √2·√3 − √6 == 0 but with distinct radicals the enclosure never collapses
        let a = Real::int(2).sqrt().mul(&Real::int(3).sqrt());
        let b = Real::int(6).sqrt();
        match a.le(&b, 256) {
            Err(Error::Undecidable { .. }) => {}
            other => panic!("expected undecidable, got {other:?}"),
        }
    }

    #[test]
    fn roots_and_powers() {
        let c = Real::rat(rat(4, 3)).root(2).powi(3);
        let iv = c.enclose(80).unwrap();
        assert!(iv.lo() * iv.lo() <= rat(64, 27) && rat(64, 27) <= iv.hi() * iv.hi());
        assert_eq!(Real::rat(rat(8, 27)).root(3).as_rat(), Some(&rat(2, 3)));
    }
}
