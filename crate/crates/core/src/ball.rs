//! Complex balls with dyadic centers and outward-rounded radii.

use crate::dyadic::{Dyadic, Round};
use crate::gaussian::GaussianRational;
use crate::rational::Rational;
use crate::scalar::{Scalar, ScalarBox};

pub const DEFAULT_PRECISION: u32 = 128;

/// The disc `{ z : |z - (re + im i)| <= rad }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
}

fn round_center(x: Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let r = x.round(prec, Round::Nearest);
    let err = (&x - &r).abs();
    (r, err)
}

fn up(x: Dyadic, prec: u32) -> Dyadic {
    x.round(prec, Round::Ceil)
}

impl Ball {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic) -> Self {
        assert!(!rad.is_negative(), "negative ball radius");
        Self { re, im, rad }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        Self { re, im, rad: Dyadic::zero() }
    }

    pub fn real(x: Dyadic, rad: Dyadic) -> Self {
        Self::new(x, Dyadic::zero(), rad)
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::one(), Dyadic::zero())
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        let cre = Dyadic::from_rational(re, prec, Round::Nearest);
        let cim = Dyadic::from_rational(im, prec, Round::Nearest);
        let err =
            num_traits::Signed::abs(&(re - cre.to_rational())) + num_traits::Signed::abs(&(im - cim.to_rational()));
        Self::new(cre, cim, Dyadic::from_rational(&err, prec, Round::Ceil))
    }

    pub fn from_gaussian(g: &GaussianRational, prec: u32) -> Self {
        Self::from_rationals(&g.re, &g.im, prec)
    }

    /// Smallest convenient ball around a rational box.
    pub fn from_box(b: &ScalarBox, prec: u32) -> Self {
        let two = crate::rational::int(2);
        let mid_re = (&b.re_lo + &b.re_hi) / &two;
        let mid_im = (&b.im_lo + &b.im_hi) / &two;
        let half = (&b.re_hi - &b.re_lo) / &two + (&b.im_hi - &b.im_lo) / &two;
        let c = Self::from_rationals(&mid_re, &mid_im, prec);
        let rad = up(&c.rad + &Dyadic::from_rational(&half, prec, Round::Ceil), prec);
        Self::new(c.re, c.im, rad)
    }

    pub fn from_scalar(x: &Scalar, prec: u32) -> Self {
        Self::from_box(&x.enclose(prec + 4), prec)
    }

    pub fn width(&self) -> Dyadic {
        &self.rad + &self.rad
    }

    pub fn inflate(&self, extra: &Dyadic, prec: u32) -> Self {
        Self::new(self.re.clone(), self.im.clone(), up(&self.rad + extra, prec))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im, self.rad.clone())
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        let (re, e1) = round_center(&self.re + &o.re, prec);
        let (im, e2) = round_center(&self.im + &o.im, prec);
        let rad = up(&(&self.rad + &o.rad) + &(&e1 + &e2), prec);
        Self::new(re, im, rad)
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    /// Upper bound of `|center|`.
    fn center_abs_upper(&self, prec: u32) -> Dyadic {
        (&self.re * &self.re + &self.im * &self.im).sqrt(prec, Round::Ceil)
    }

    fn center_abs_lower(&self, prec: u32) -> Dyadic {
        (&self.re * &self.re + &self.im * &self.im).sqrt(prec, Round::Floor)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let (re, e1) = round_center(&self.re * &o.re - &self.im * &o.im, prec);
        let (im, e2) = round_center(&self.re * &o.im + &self.im * &o.re, prec);
        let mut rad = &e1 + &e2;
        if !o.rad.is_zero() {
            rad = rad + up(&self.center_abs_upper(prec) * &o.rad, prec);
        }
        if !self.rad.is_zero() {
            rad = rad + up(&o.center_abs_upper(prec) * &self.rad, prec);
            rad = rad + &self.rad * &o.rad;
        }
        Self::new(re, im, up(rad, prec))
    }

    pub fn scale_int(&self, k: i64, prec: u32) -> Self {
        self.mul(&Ball::point(Dyadic::from_int(k), Dyadic::zero()), prec)
    }

    pub fn pow_int(&self, mut n: u32, prec: u32) -> Self {
        let mut acc = Ball::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// Upper bound of `|z|` over the ball.
    pub fn modulus_upper(&self, prec: u32) -> Dyadic {
        up(&self.center_abs_upper(prec) + &self.rad, prec)
    }

    /// Lower bound of `|z|` over the ball, clamped at zero.
    pub fn modulus_lower(&self, prec: u32) -> Dyadic {
        let l = (&self.center_abs_lower(prec) - &self.rad).round(prec, Round::Floor);
        l.max(Dyadic::zero())
    }

    /// Real ball containing `max(|z|, 1)` for every `z` in the ball.
    pub fn max_mod1(&self, prec: u32) -> Self {
        let lo = self.modulus_lower(prec).max(Dyadic::one());
        let hi = self.modulus_upper(prec).max(Dyadic::one());
        let center = (&lo + &hi).half();
        let rad = (&hi - &lo).half();
        Self::real(center, rad)
    }

    /// Exact test of `g` lying in the closed disc.
    pub fn contains_gaussian(&self, g: &GaussianRational) -> bool {
        let dr = &g.re - self.re.to_rational();
        let di = &g.im - self.im.to_rational();
        let r = self.rad.to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    /// Certified containment of a scalar value, refining the `t` enclosure up to `max_p` bits.
    ///
    /// The possible values form a segment, and the disc is convex, so checking
    /// both ends suffices.
    pub fn contains_scalar(&self, x: &Scalar, max_p: u32) -> bool {
        if x.is_algebraic() {
            return self.contains_gaussian(&x.base);
        }
        let mut p = 32;
        loop {
            let enc = crate::tau::TauOracle::enclosure(p);
            let lo = &x.base + &x.tau.scale(&enc.lo);
            let hi = &x.base + &x.tau.scale(&enc.hi);
            if self.contains_gaussian(&lo) && self.contains_gaussian(&hi) {
                return true;
            }
            if p >= max_p {
                return false;
            }
            p *= 2;
        }
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_inside(&self, other: &Self, prec: u32) -> bool {
        let d = Ball::point(&self.re - &other.re, &self.im - &other.im).modulus_upper(prec);
        &d + &self.rad <= other.rad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    const P: u32 = DEFAULT_PRECISION;

    #[test]
    fn add_of_points() {
        let s = Ball::zero().add(&Ball::one(), P);
        assert_eq!(s, Ball::one());
    }

    #[test]
    fn max_mod1_of_half() {
        let b = Ball::from_rationals(&ratio(1, 2), &int(0), P).max_mod1(P);
        assert!(b.contains_gaussian(&GaussianRational::one()));
    }

    #[test]
    fn square_of_fuzzy_two() {
        let b = Ball::real(Dyadic::from_int(2), Dyadic::new(1.into(), -3));
        let sq = b.pow_int(2, P);
        let lo = ratio(15, 8) * ratio(15, 8);
        let hi = ratio(17, 8) * ratio(17, 8);
        assert!(sq.contains_gaussian(&GaussianRational::from_rational(lo.clone())));
        assert!(sq.contains_gaussian(&GaussianRational::from_rational(hi.clone())));
        assert!(sq.modulus_lower(P).to_rational() <= lo);
        assert!(sq.modulus_upper(P).to_rational() >= hi);
    }

    #[test]
    fn contains_tau_value() {
        let t = Scalar::tau_unit();
        let b = Ball::from_scalar(&t, P);
        assert!(b.contains_scalar(&t, 256));
        assert!(b.rad.to_rational() < crate::rational::pow2(-100));
    }
}
