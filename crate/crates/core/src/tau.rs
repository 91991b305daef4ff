//! The fixed transcendental `t = sum_{k>=1} 10^(-k!)` (Liouville's constant).
//!
//! Partial sums are exact lower bounds. The tail after `m` terms is below
//! `10^(-(m+1)!) * 10/9` because the exponents `k!` are strictly increasing
//! integers, so every enclosure is nested in the previous one.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::rational::{factorial, pow2, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TauOracle;

/// `[lo, hi]` with `lo <= t <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    pub terms: u32,
}

fn ten_pow_neg(e: &BigInt) -> Rational {
    let e: u32 = e.try_into().expect("tau exponent out of range");
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(e))
}

impl TauOracle {
    /// `sum_{k=1}^{m} 10^(-k!)`.
    pub fn partial_sum(m: u32) -> Rational {
        (1..=m as u64).map(|k| ten_pow_neg(&factorial(k))).sum()
    }

    /// Upper bound of the tail after `m` terms.
    pub fn tail_bound(m: u32) -> Rational {
        ten_pow_neg(&factorial(m as u64 + 1)) * Rational::new(10.into(), 9.into())
    }

    /// Fewest terms (at least one) whose tail bound is `<= 2^-p`.
    pub fn terms_for(p: u32) -> u32 {
        let target = pow2(-(p as i64));
        let mut m = 1;
        while Self::tail_bound(m) > target {
            m += 1;
        }
        m
    }

    /// Interval of width at most `2^-p` containing the constant.
    pub fn enclosure(p: u32) -> TauEnclosure {
        let m = Self::terms_for(p);
        let lo = Self::partial_sum(m);
        let hi = &lo + Self::tail_bound(m);
        TauEnclosure { lo, hi, terms: m }
    }
}
