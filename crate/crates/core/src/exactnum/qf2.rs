use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::interval::{sqrt_enclosure, DyadicInterval};
use super::primes::squarefree_decompose;
use super::rat::{parse_rat, rat_floor, rat_to_string, Int, Rat};
use crate::error::{Error, Result};

/// An element `a + b·√d` of a real quadratic field, `d` squarefree.
///
/// Normal form: `b == 0` exactly when `d == 1`. Arithmetic between elements
/// of two different fields (both with `b != 0`) panics; inputs are validated
/// for a common `d` at parse time.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qf2 {
    a: Rat,
    b: Rat,
    d: u64,
}

impl Qf2 {
    /// Builds `a + b√d`, normalising `d` to its squarefree part.
    pub fn new(a: Rat, b: Rat, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("quadratic field parameter d must be >= 1".into()));
        }
        let (s, f) = squarefree_decompose(&Rat::from_integer(BigInt::from(d)));
        let s = s.to_u64().expect("squarefree part fits");
        Ok(Self::normalized(a, b * f, s))
    }

    fn normalized(a: Rat, b: Rat, d: u64) -> Self {
        if d == 1 {
            Qf2 { a: a + b, b: Rat::zero(), d: 1 }
        } else if b.is_zero() {
            Qf2 { a, b, d: 1 }
        } else {
            Qf2 { a, b, d }
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        Qf2 { a, b: Rat::zero(), d: 1 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rat(Rat::from_integer(v.into()))
    }

    /// √d itself.
    pub fn sqrt_of(d: u64) -> Result<Self> {
        Self::new(Rat::zero(), Rat::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    /// Exact sign under the embedding √d > 0: compares a² with b²d.
    pub fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("d is squarefree and not 1"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    /// a − b√d.
    pub fn conjugate(&self) -> Self {
        Qf2 { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm a² − d b² (a rational).
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(BigInt::from(self.d))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Qf2::normalized(c.a / &n, c.b / n, c.d))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Qf2::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Certified enclosure with the √d factor known to within 2^-bits.
    pub fn enclose(&self, bits: u32) -> DyadicInterval {
        if self.is_rational() {
            return DyadicInterval::point(self.a.clone());
        }
        let r = sqrt_enclosure(&Rat::from_integer(BigInt::from(self.d)), bits + 2)
            .expect("d positive");
        DyadicInterval::point(self.a.clone()) + r.scale(&self.b)
    }

    /// Exact floor. Irrational values are never integers, so refinement terminates.
    pub fn floor(&self) -> Int {
        if self.is_rational() {
            return rat_floor(&self.a);
        }
        let mut bits = 32;
        loop {
            let iv = self.enclose(bits);
            let lo = rat_floor(iv.lo());
            if lo == rat_floor(iv.hi()) {
                return lo;
            }
            bits *= 2;
        }
    }

    /// Nearest integer, ties rounded up.
    pub fn round(&self) -> Int {
        (self + &Qf2::from_rat(Rat::new(1.into(), 2.into()))).floor()
    }

    fn join_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("{}", Error::IncompatibleField(x, y)),
        }
    }

    /// Whether the two values can be combined arithmetically.
    pub fn compatible(&self, other: &Self) -> bool {
        self.d == 1 || other.d == 1 || self.d == other.d
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

fn sgn(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for Qf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", rat_to_string(&self.a));
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format!("({})*", rat_to_string(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else {
            write!(f, "{} + {b}sqrt({})", rat_to_string(&self.a), self.d)
        }
    }
}

impl fmt::Debug for Qf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Qf2({self})")
    }
}

impl PartialOrd for Qf2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compatible(other).then(|| self.cmp_exact(other))
    }
}

impl From<Rat> for Qf2 {
    fn from(r: Rat) -> Self {
        Qf2::from_rat(r)
    }
}

impl From<&Rat> for Qf2 {
    fn from(r: &Rat) -> Self {
        Qf2::from_rat(r.clone())
    }
}

impl From<i64> for Qf2 {
    fn from(v: i64) -> Self {
        Qf2::from_int(v)
    }
}

impl<'a> Add<&'a Qf2> for &'a Qf2 {
    type Output = Qf2;
    fn add(self, rhs: &Qf2) -> Qf2 {
        let d = self.join_d(rhs);
        Qf2::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a Qf2> for &'a Qf2 {
    type Output = Qf2;
    fn sub(self, rhs: &Qf2) -> Qf2 {
        let d = self.join_d(rhs);
        Qf2::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a Qf2> for &'a Qf2 {
    type Output = Qf2;
    fn mul(self, rhs: &Qf2) -> Qf2 {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Qf2::from_rat(&self.a * &rhs.a);
        }
        let d = self.join_d(rhs);
        let dd = Rat::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Qf2::normalized(a, b, d)
    }
}

impl<'a> Div<&'a Qf2> for &'a Qf2 {
    type Output = Qf2;
    fn div(self, rhs: &Qf2) -> Qf2 {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero");
            return Qf2::normalized(&self.a / &rhs.a, &self.b / &rhs.a, self.d);
        }
        self * &rhs.inverse().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Qf2> for Qf2 {
            type Output = Qf2;
            fn $m(self, rhs: Qf2) -> Qf2 { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Qf2> for Qf2 {
            type Output = Qf2;
            fn $m(self, rhs: &Qf2) -> Qf2 { (&self).$m(rhs) }
        }
        impl<'a> $tr<Qf2> for &'a Qf2 {
            type Output = Qf2;
            fn $m(self, rhs: Qf2) -> Qf2 { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Qf2 {
    type Output = Qf2;
    fn neg(self) -> Qf2 {
        Qf2 { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &Qf2 {
    type Output = Qf2;
    fn neg(self) -> Qf2 {
        -self.clone()
    }
}

impl std::iter::Sum for Qf2 {
    fn sum<I: Iterator<Item = Qf2>>(iter: I) -> Qf2 {
        iter.fold(Qf2::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct Qf2Repr {
    #[serde(with = "super::rat::serde_rat")]
    a: Rat,
    #[serde(with = "super::rat::serde_rat", default = "Rat::zero")]
    b: Rat,
    #[serde(default = "one_u64")]
    d: u64,
}

fn one_u64() -> u64 {
    1
}

impl Serialize for Qf2 {
    /// Rational values serialize as "p/q" strings, irrational ones as objects.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.d == 1 {
            return s.serialize_str(&rat_to_string(&self.a));
        }
        Qf2Repr { a: self.a.clone(), b: self.b.clone(), d: self.d }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Qf2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Obj(Qf2Repr),
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(de)? {
            Raw::Obj(r) => Qf2::new(r.a, r.b, r.d).map_err(D::Error::custom),
            Raw::Str(s) => parse_rat(&s).map(Qf2::from_rat).map_err(D::Error::custom),
            Raw::Int(i) => Ok(Qf2::from_int(i)),
        }
    }
}
