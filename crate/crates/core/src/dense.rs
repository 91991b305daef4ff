//! Dense target sets with decidable membership, and the deterministic
//! "pick a member inside this disc" step.
//!
//! The sampler scans dyadic grids of step `2^-t` for `t = 0, 1, 2, ...`. At
//! each level it tries the grid point nearest the center (ties toward
//! negative infinity in both coordinates) and then that point shifted by
//! `2^-(t+2)` along the real axis. The first candidate that is a member,
//! differs from the center when asked to, and is certified strictly inside
//! the disc wins.

use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{ForgeError, Result};
use crate::gaussian::GaussianRational;
use crate::rational::{self, pow2, Rational};
use crate::scalar::Scalar;
use crate::tau::TauOracle;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DenseSetSpec {
    /// Q(i), the stand-in for algebraic targets.
    GaussianRational,
    /// Q. Dense in the real line only, so it can only be hit from discs meeting it.
    Rational,
    /// Values with a nonzero `t` part, the stand-in for non-algebraic targets.
    Transcendental,
    /// `c + Q(i) d` with `d != 0`.
    ShiftedLattice { c: Scalar, d: Scalar },
}

impl DenseSetSpec {
    pub fn shifted_lattice(c: Scalar, d: Scalar) -> Result<Self> {
        if d.is_zero() {
            return Err(ForgeError::InvalidSet("lattice step d must be nonzero".into()));
        }
        Ok(Self::ShiftedLattice { c, d })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::GaussianRational => "GAUSSIAN_RATIONAL",
            Self::Rational => "RATIONAL",
            Self::Transcendental => "TRANSCENDENTAL",
            Self::ShiftedLattice { .. } => "SHIFTED_LATTICE",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::ShiftedLattice { d, .. } if d.is_zero() => {
                Err(ForgeError::InvalidSet("lattice step d must be nonzero".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        member_of(self, x)
    }
}

impl fmt::Display for DenseSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ShiftedLattice { c, d } => write!(f, "SHIFTED_LATTICE(c={c},d={d})"),
            other => f.write_str(other.kind_name()),
        }
    }
}

pub fn member_of(set: &DenseSetSpec, x: &Scalar) -> bool {
    match set {
        DenseSetSpec::GaussianRational => x.is_algebraic(),
        DenseSetSpec::Rational => x.is_algebraic() && x.base.im.is_zero(),
        DenseSetSpec::Transcendental => !x.is_algebraic(),
        DenseSetSpec::ShiftedLattice { c, d } => {
            let y = x - c;
            if d.tau.is_zero() {
                // c + Q(i) d = c + Q(i) when d is itself in Q(i).
                return y.tau.is_zero();
            }
            match y.tau.checked_div(&d.tau) {
                Ok(q) => y.base == &q * &d.base,
                Err(_) => false,
            }
        }
    }
}

/// A sample together with the grid level that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub value: Scalar,
    pub grid_level: u32,
}

fn nearest_on_grid(x: &Rational, step: &Rational) -> Rational {
    let half = Rational::new(1.into(), 2.into());
    Rational::from_integer(rational::ceil_int(&(x / step - half))) * step
}

fn nearest_point(w: &GaussianRational, step: &Rational) -> GaussianRational {
    GaussianRational::new(nearest_on_grid(&w.re, step), nearest_on_grid(&w.im, step))
}

struct Disc<'a> {
    set: &'a DenseSetSpec,
    center: &'a Scalar,
    radius: &'a Rational,
    exclude_center: bool,
    prec: u32,
    /// Center approximated to `2^-(prec+8)` per coordinate.
    approx_center: GaussianRational,
    /// `(radius + 2^-(prec+5))^2`: anything farther from `approx_center` is certainly outside.
    reject_sq: Rational,
}

impl Disc<'_> {
    /// Cheap exact test that `e` is certainly outside the disc.
    fn clearly_outside(&self, e: &Scalar) -> bool {
        let ea = if e.is_algebraic() { e.base.clone() } else { e.approx(self.prec + 8) };
        (&ea - &self.approx_center).norm_sqr() >= self.reject_sq
    }

    fn strictly_inside(&self, e: &Scalar) -> bool {
        !self.clearly_outside(e)
            && (e - self.center).certify_modulus_lt(self.radius, self.prec, 4 * self.prec) == Some(true)
    }

    fn accept(&self, e: &Scalar) -> bool {
        member_of(self.set, e) && !(self.exclude_center && e == self.center) && self.strictly_inside(e)
    }

    /// Smallest `u` with a certified `t * 2^-u < budget`.
    fn tau_scale(&self, budget: &Rational) -> Option<Rational> {
        if !budget.is_positive() {
            return None;
        }
        let t_upper = TauOracle::enclosure(self.prec + 8).hi;
        let mut scale = Rational::one();
        while &(&t_upper * &scale) >= budget {
            scale /= rational::int(2);
        }
        Some(scale)
    }

    fn candidate(&self, g: GaussianRational) -> Option<Scalar> {
        match self.set {
            DenseSetSpec::Transcendental => {
                let gs = Scalar::from(g);
                if self.clearly_outside(&gs) {
                    return None;
                }
                let dist = (&gs - self.center).modulus_upper(self.prec + 4);
                let scale = self.tau_scale(&(self.radius - dist))?;
                Some(gs + Scalar::tau_unit().mul_gaussian(&GaussianRational::from_rational(scale)))
            }
            DenseSetSpec::ShiftedLattice { c, d } => Some(c + &d.mul_gaussian(&g)),
            DenseSetSpec::Rational => Some(Scalar::from_rational(g.re)),
            DenseSetSpec::GaussianRational => Some(Scalar::from(g)),
        }
    }
}

/// Deterministically picks a member of `set` strictly within `radius` of `center`.
pub fn sample_in_disc(set: &DenseSetSpec, center: &Scalar, radius: &Rational, exclude_center: bool) -> Result<Scalar> {
    sample_with_level(set, center, radius, exclude_center).map(|s| s.value)
}

pub fn sample_with_level(
    set: &DenseSetSpec,
    center: &Scalar,
    radius: &Rational,
    exclude_center: bool,
) -> Result<Sample> {
    if !radius.is_positive() {
        return Err(ForgeError::InvalidArgument("sampling radius must be positive".into()));
    }
    set.validate()?;
    let prec = rational::bits_below(radius) + 16;
    let slack = radius + pow2(-(prec as i64) - 5);
    let disc = Disc {
        set,
        center,
        radius,
        exclude_center,
        prec,
        approx_center: center.approx(prec + 8),
        reject_sq: &slack * &slack,
    };

    // Coordinates in which the grid lives: the value itself, or (value - c)/d for lattices.
    let target = match set {
        DenseSetSpec::ShiftedLattice { c, d } => {
            let y = (center - c).approx(prec + 8);
            let scale = rational::magnitude_bits(&d.modulus_upper(8)).max(0) as u32;
            let dz = d.approx(prec + 8 + scale + 8);
            y.checked_div(&dz)?
        }
        DenseSetSpec::Rational => {
            let b = center.enclose(prec);
            let (min_im, _) = rational::abs_range(&b.im_lo, &b.im_hi);
            if &min_im >= radius {
                return Err(ForgeError::EmptyIntersection(alloc::format!(
                    "disc of radius {radius} around {center} misses the real line"
                )));
            }
            center.approx(prec + 8)
        }
        _ => center.approx(prec + 8),
    };

    let max_depth = 4 * prec;
    for t in 0..=max_depth {
        let step = pow2(-(t as i64));
        let g = nearest_point(&target, &step);
        let shifted = GaussianRational::new(&g.re + pow2(-(t as i64) - 2), g.im.clone());
        for cand in [g, shifted] {
            if let Some(e) = disc.candidate(cand) {
                if disc.accept(&e) {
                    return Ok(Sample { value: e, grid_level: t });
                }
            }
        }
    }
    Err(ForgeError::SamplerLimit { max_depth })
}
