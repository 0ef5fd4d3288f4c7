use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{Int, Rat};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorisation of |n| into (prime, exponent) pairs, ascending.
///
/// Adequate for the desk-scale integers that appear in forms and local data.
pub fn factor(n: &Int) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let last = n.to_u64().expect("prime factor exceeds u64");
        out.push((last, 1));
    }
    out
}

/// v_p of a nonzero rational. Panics on zero.
pub fn padic_valuation(r: &Rat, p: u64) -> i64 {
    assert!(!r.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let count = |mut n: Int| {
        let mut e = 0i64;
        loop {
            let (q, rem) = n.div_rem(&pb);
            if !rem.is_zero() {
                return e;
            }
            n = q;
            e += 1;
        }
    };
    count(r.numer().clone()) - count(r.denom().clone())
}

/// |r|_p normalised by |p|_p = 1/p.
pub fn padic_abs(r: &Rat, p: u64) -> Rat {
    if r.is_zero() {
        return Rat::zero();
    }
    let v = padic_valuation(r, p);
    let pb = BigInt::from(p);
    if v >= 0 {
        Rat::new(BigInt::one(), pb.pow(v as u32))
    } else {
        Rat::from_integer(pb.pow((-v) as u32))
    }
}

/// Writes a nonzero rational as `s * f^2` with `s` a squarefree integer
/// (sign included) and `f` a positive rational. Returns `(s, f)`.
pub fn squarefree_decompose(r: &Rat) -> (Int, Rat) {
    assert!(!r.is_zero());
    // r = n/d = n*d / d^2
    let m = r.numer() * r.denom();
    let mut s = if m.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut f = BigInt::one();
    for (p, e) in factor(&m) {
        let pb = BigInt::from(p);
        if e % 2 == 1 {
            s *= &pb;
        }
        f *= pb.pow(e / 2);
    }
    (s, Rat::new(f, r.denom().clone()))
}
