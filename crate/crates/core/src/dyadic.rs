use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// `mant * 2^exp`, normalized so that `mant` is odd (or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
    /// Nearest, ties toward positive infinity.
    Nearest,
}

fn div_pow2(m: &BigInt, shift: u64, mode: Round) -> BigInt {
    let d = BigInt::one() << shift;
    match mode {
        Round::Floor => m.div_floor(&d),
        Round::Ceil => -((-m).div_floor(&d)),
        Round::Nearest => (m + (&d >> 1usize)).div_floor(&d),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Self { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn half(&self) -> Self {
        Self::new(self.mant.clone(), self.exp - 1)
    }

    pub fn to_rational(&self) -> Rational {
        &Rational::from_integer(self.mant.clone()) * &rational::pow2(self.exp)
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        Self::new(div_pow2(&self.mant, shift, mode), self.exp + shift as i64)
    }

    /// Rational rounded to `prec` significant bits in the given direction.
    pub fn from_rational(q: &Rational, prec: u32, mode: Round) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let k = prec as i64 + 1 - rational::magnitude_bits(q);
        let scaled = q * rational::pow2(k);
        let m = match mode {
            Round::Floor => rational::floor_int(&scaled),
            Round::Ceil => rational::ceil_int(&scaled),
            Round::Nearest => rational::floor_int(&(scaled + Rational::new(1.into(), 2.into()))),
        };
        Self::new(m, -k).round(prec, mode)
    }

    /// Square root bound with about `prec` significant bits. `self` must be nonnegative.
    pub fn sqrt(&self, prec: u32, mode: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let want = 2 * prec as i64 + 2;
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << (shift as usize);
        let mut r = m.sqrt();
        if mode != Round::Floor && &r * &r < m {
            r += 1;
        }
        Self::new(r, (self.exp - shift) / 2)
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m: i64 = (&self.mant >> (shift as usize)).try_into().unwrap_or(0);
        let mut e = self.exp + shift;
        let mut v = m as f64;
        const UP: f64 = (1u64 << 60) as f64;
        while e >= 60 && v.is_finite() {
            v *= UP;
            e -= 60;
        }
        while e <= -60 && v != 0.0 {
            v /= UP;
            e += 60;
        }
        let scale = (1u64 << e.unsigned_abs()) as f64;
        if e >= 0 {
            v * scale
        } else {
            v / scale
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &rhs.mant << ((rhs.exp - e) as usize);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

crate::gaussian::forward_owned!(Dyadic, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn rounding_directions() {
        let x = Dyadic::from_rational(&ratio(1, 3), 10, Round::Floor);
        let y = Dyadic::from_rational(&ratio(1, 3), 10, Round::Ceil);
        assert!(x.to_rational() <= ratio(1, 3) && y.to_rational() >= ratio(1, 3));
        assert!(y.to_rational() - x.to_rational() <= rational::pow2(-10));
        let z = Dyadic::from_rational(&ratio(-5, 7), 20, Round::Floor);
        assert!(z.to_rational() <= ratio(-5, 7));
    }

    #[test]
    fn exact_values_survive() {
        assert_eq!(Dyadic::from_rational(&ratio(3, 8), 64, Round::Ceil).to_rational(), ratio(3, 8));
        assert_eq!(Dyadic::from_int(12).round(2, Round::Floor).to_rational(), int(12));
        assert_eq!(Dyadic::from_int(13).round(2, Round::Floor).to_rational(), int(12));
        assert_eq!(Dyadic::from_int(13).round(2, Round::Ceil).to_rational(), int(16));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(50, Round::Floor);
        let hi = two.sqrt(50, Round::Ceil);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!((&hi - &lo).to_rational() <= rational::pow2(-48));
        assert_eq!(Dyadic::new(9.into(), -4).sqrt(8, Round::Ceil).to_rational(), ratio(3, 4));
    }

    #[test]
    fn ordering() {
        assert!(Dyadic::from_int(-1) < Dyadic::zero());
        assert!(Dyadic::new(1.into(), -3) < Dyadic::new(1.into(), -2));
        assert!((Dyadic::new(3.into(), -1).to_f64() - 1.5).abs() < 1e-15);
    }
}
