//! Local isotropy of diagonal forms via Hilbert symbols (Hasse–Minkowski).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{factor, Int};
use crate::forms::Place;

/// (v_p(x), x / p^v) for nonzero x.
fn split(x: &Int, p: u64) -> (u32, Int) {
    let pb = BigInt::from(p);
    let mut u = x.clone();
    let mut v = 0;
    while (&u % &pb).is_zero() {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

fn legendre(u: &Int, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = u.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &Int) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().expect("small")
}

/// The Hilbert symbol (a, b)_v for nonzero integers.
pub fn hilbert_symbol(a: &Int, b: &Int, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (al, u) = split(a, 2);
            let (be, v) = split(b, 2);
            let eps = |x: &Int| ((mod8(x) + 7) % 8 / 2) % 2; // (x−1)/2 mod 2
            let omega = |x: &Int| {
                let r = mod8(x);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(&u) * eps(&v) + al * omega(&v) + be * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (al, u) = split(a, p);
            let (be, v) = split(b, p);
            let mut s: i8 = if (al * be) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// Whether d ≠ 0 is a square in ℚ_v.
pub fn is_local_square(d: &Int, place: Place) -> bool {
    match place {
        Place::Infinity => d.is_positive(),
        Place::Finite(p) => {
            let (v, u) = split(d, p);
            v % 2 == 0 && if p == 2 { mod8(&u) == 1 } else { legendre(&u, p) == 1 }
        }
    }
}

/// Whether the diagonal form ⟨a_1, …, a_n⟩ has a nontrivial zero over ℚ_v.
pub fn locally_isotropic(diag: &[Int], place: Place) -> bool {
    let n = diag.len();
    let d: Int = diag.iter().product();
    if let Place::Infinity = place {
        return diag.iter().any(Int::is_positive) && diag.iter().any(Int::is_negative);
    }
    let eps: i8 = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| hilbert_symbol(&diag[i], &diag[j], place))
        .product();
    let minus_one = -Int::one();
    match n {
        0 | 1 => false,
        2 => is_local_square(&-d, place),
        3 => hilbert_symbol(&minus_one, &-d, place) == eps,
        4 => !is_local_square(&d, place) || eps == hilbert_symbol(&minus_one, &minus_one, place),
        _ => true,
    }
}

/// The first place (∞, then primes ascending) where the form is anisotropic.
pub fn local_obstruction(diag: &[Int]) -> Option<Place> {
    let mut places = vec![Place::Infinity, Place::Finite(2)];
    let mut primes: Vec<u64> = diag.iter().flat_map(|a| factor(a)).map(|(p, _)| p).filter(|&p| p != 2).collect();
    primes.sort_unstable();
    primes.dedup();
    places.extend(primes.into_iter().map(Place::Finite));
    places.into_iter().find(|&v| !locally_isotropic(diag, v))
}
