//! Values `base + tau * t` in the Q(i)-module spanned by 1 and the Liouville constant `t`.
//!
//! Only Q(i)-linear operations are provided. The construction never multiplies
//! two values that both carry a `t` part, so the module is closed under
//! everything it needs, and algebraicity reduces to `tau == 0`.

use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::Signed;

use crate::error::{ForgeError, Result};
use crate::gaussian::{forward_owned, GaussianRational};
use crate::rational::{self, abs_range, Rational};
use crate::tau::TauOracle;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub base: GaussianRational,
    pub tau: GaussianRational,
}

/// Rational box `[re_lo, re_hi] x [im_lo, im_hi]` around a scalar's complex value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarBox {
    pub re_lo: Rational,
    pub re_hi: Rational,
    pub im_lo: Rational,
    pub im_hi: Rational,
}

fn affine_range(b: &Rational, t: &Rational, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let x = b + t * lo;
    let y = b + t * hi;
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

impl Scalar {
    pub fn new(base: GaussianRational, tau: GaussianRational) -> Self {
        Self { base, tau }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `t` itself.
    pub fn tau_unit() -> Self {
        Self { base: GaussianRational::zero(), tau: GaussianRational::one() }
    }

    pub fn from_rational(q: Rational) -> Self {
        GaussianRational::from_rational(q).into()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.tau.is_zero()
    }

    pub fn is_algebraic(&self) -> bool {
        self.tau.is_zero()
    }

    /// The Q(i) value when the `t` part vanishes.
    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        self.is_algebraic().then_some(&self.base)
    }

    pub fn mul_gaussian(&self, k: &GaussianRational) -> Self {
        Self { base: &self.base * k, tau: &self.tau * k }
    }

    pub fn div_gaussian(&self, k: &GaussianRational) -> Result<Self> {
        Ok(self.mul_gaussian(&k.inv()?))
    }

    /// Box around the value using a `t` enclosure fine enough that each side is at most `2^-p`.
    pub fn enclose(&self, p: u32) -> ScalarBox {
        if self.is_algebraic() {
            return ScalarBox {
                re_lo: self.base.re.clone(),
                re_hi: self.base.re.clone(),
                im_lo: self.base.im.clone(),
                im_hi: self.base.im.clone(),
            };
        }
        let weight = rational::magnitude_bits(&(self.tau.re.abs() + self.tau.im.abs()));
        let q = p as i64 + 1 + weight.max(0);
        let enc = TauOracle::enclosure(q as u32);
        let (re_lo, re_hi) = affine_range(&self.base.re, &self.tau.re, &enc.lo, &enc.hi);
        let (im_lo, im_hi) = affine_range(&self.base.im, &self.tau.im, &enc.lo, &enc.hi);
        ScalarBox { re_lo, re_hi, im_lo, im_hi }
    }

    /// Gaussian rational within `2^-p` of the value in each coordinate.
    pub fn approx(&self, p: u32) -> GaussianRational {
        let b = self.enclose(p);
        let two = rational::int(2);
        GaussianRational::new((b.re_lo + b.re_hi) / &two, (b.im_lo + b.im_hi) / two)
    }

    /// Rational `u >= |value|` with `u - |value| <= 2^-p`.
    pub fn modulus_upper(&self, p: u32) -> Rational {
        if self.is_algebraic() {
            return self.base.modulus_upper(p);
        }
        let b = self.enclose(p + 2);
        let (_, re) = abs_range(&b.re_lo, &b.re_hi);
        let (_, im) = abs_range(&b.im_lo, &b.im_hi);
        rational::sqrt_upper(&(&re * &re + &im * &im), p + 1)
    }

    /// Rational `l <= |value|` with `|value| - l <= 2^-p`, never negative.
    pub fn modulus_lower(&self, p: u32) -> Rational {
        if self.is_algebraic() {
            return self.base.modulus_lower(p);
        }
        let b = self.enclose(p + 2);
        let (re, _) = abs_range(&b.re_lo, &b.re_hi);
        let (im, _) = abs_range(&b.im_lo, &b.im_hi);
        rational::sqrt_lower(&(&re * &re + &im * &im), p + 1)
    }

    /// Decides `|value| < bound` by refining until certified; `None` if undecided at `max_p` bits.
    pub fn certify_modulus_lt(&self, bound: &Rational, start_p: u32, max_p: u32) -> Option<bool> {
        let mut p = start_p.max(1);
        loop {
            if &self.modulus_upper(p) < bound {
                return Some(true);
            }
            if &self.modulus_lower(p) >= bound {
                return Some(false);
            }
            if p >= max_p {
                return None;
            }
            p = (p * 2).min(max_p);
        }
    }

    /// Decides `|value| <= bound`. Exact for algebraic values; refines otherwise.
    pub fn certify_modulus_le(&self, bound: &Rational, max_p: u32) -> Option<bool> {
        if bound.is_negative() {
            return Some(false);
        }
        if self.is_algebraic() {
            return Some(self.base.norm_sqr() <= bound * bound);
        }
        // |base + tau t|^2 is a nonconstant quadratic in t, never exactly bound^2.
        let mut p = 16u32.max(rational::bits_below_or_zero(bound) + 8);
        loop {
            if &self.modulus_upper(p) <= bound {
                return Some(true);
            }
            if &self.modulus_lower(p) > bound {
                return Some(false);
            }
            if p >= max_p {
                return None;
            }
            p = (p * 2).min(max_p);
        }
    }
}

impl From<GaussianRational> for Scalar {
    fn from(base: GaussianRational) -> Self {
        Self { base, tau: GaussianRational::zero() }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { base: &self.base + &rhs.base, tau: &self.tau + &rhs.tau }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { base: &self.base - &rhs.base, tau: &self.tau - &rhs.tau }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { base: -&self.base, tau: -&self.tau }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned!(Scalar, Add add, Sub sub);

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::literal::write_terms(
            f,
            &[(&self.base.re, ""), (&self.base.im, "*i"), (&self.tau.re, "*t"), (&self.tau.im, "*i*t")],
        )
    }
}

impl core::str::FromStr for Scalar {
    type Err = ForgeError;
    fn from_str(s: &str) -> Result<Self> {
        crate::literal::parse_scalar(s)
    }
}
