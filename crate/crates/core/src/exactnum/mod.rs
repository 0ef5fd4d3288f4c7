//! Exact scalar arithmetic: rationals, elements of real quadratic fields,
//! certified enclosures and lazily refined real expressions.

mod interval;
mod poly;
mod primes;
mod qf2;
mod rat;
mod real;
mod surd;

pub use interval::{sqrt_enclosure, DyadicInterval};
pub use poly::{char_poly, isolate_real_roots, refine_root, Poly};
pub use primes::{factor, is_prime, padic_abs, padic_valuation, squarefree_decompose};
pub use qf2::Qf2;
pub use rat::serde_rat;
pub use rat::{
    int, is_square, isqrt, parse_rat, rat, rat_ceil, rat_floor, rat_to_string, simplest_between, Int,
    Rat,
};
pub use real::{Real, RootOf};
pub use surd::{Magnitude, Surd};

/// Default cap on interval precision before a comparison is declared undecidable.
pub const DEFAULT_MAX_BITS: u32 = 4096;
