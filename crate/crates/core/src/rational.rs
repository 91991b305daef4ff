//! Exact rationals and the few certified bounds built on them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^e` as an exact rational.
pub fn pow2(e: i64) -> Rational {
    let one = BigInt::one();
    if e >= 0 {
        Rational::from_integer(one << (e as usize))
    } else {
        Rational::new(one.clone(), one << ((-e) as usize))
    }
}

/// Rough binary magnitude: for nonzero `q`, `2^(b-1) < |q| < 2^(b+1)`.
pub fn magnitude_bits(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Smallest `k >= 0` with `2^-k <= q` for positive `q`, up to one bit of slack on the safe side.
pub fn bits_below(q: &Rational) -> u32 {
    debug_assert!(q.is_positive());
    let b = magnitude_bits(q);
    if b >= 1 {
        0
    } else {
        (1 - b) as u32
    }
}

/// Like [`bits_below`] but also accepts zero and negative input (returns 0).
pub fn bits_below_or_zero(q: &Rational) -> u32 {
    if q.is_positive() {
        bits_below(q)
    } else {
        0
    }
}

pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_int(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

fn isqrt_floor(n: &BigInt) -> BigInt {
    debug_assert!(n.sign() != Sign::Minus);
    n.sqrt()
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

/// Rational `u` with `sqrt(r) <= u <= sqrt(r) + 2^-p`, exact when `r` is a dyadic square.
pub fn sqrt_upper(r: &Rational, p: u32) -> Rational {
    assert!(!r.is_negative(), "sqrt of negative rational");
    let k = p as usize + 1;
    let scaled = r * Rational::from_integer(BigInt::one() << (2 * k));
    let s = isqrt_ceil(&ceil_int(&scaled));
    Rational::new(s, BigInt::one() << k)
}

/// Rational `l` with `sqrt(r) - 2^-p <= l <= sqrt(r)`.
pub fn sqrt_lower(r: &Rational, p: u32) -> Rational {
    assert!(!r.is_negative(), "sqrt of negative rational");
    let k = p as usize + 1;
    let scaled = r * Rational::from_integer(BigInt::one() << (2 * k));
    let s = isqrt_floor(&floor_int(&scaled));
    Rational::new(s, BigInt::one() << k)
}

/// Positive lower bound of `sqrt(r)` for `r > 0`, within a relative error of about `2^-16`.
pub fn sqrt_lower_positive(r: &Rational) -> Rational {
    debug_assert!(r.is_positive());
    let extra = (-magnitude_bits(r)).max(0) as u32;
    let l = sqrt_lower(r, 18 + extra / 2 + 1);
    debug_assert!(l.is_positive());
    l
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn max_ref<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// `|x|` over an interval `[lo, hi]`: returns `(min |x|, max |x|)`.
pub fn abs_range(lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let (alo, ahi) = (lo.abs(), hi.abs());
    let max = max_ref(&alo, &ahi).clone();
    let min = if lo.is_positive() || lo.is_zero() {
        alo
    } else if hi.is_negative() || hi.is_zero() {
        ahi
    } else {
        Rational::zero()
    };
    (min, max)
}
