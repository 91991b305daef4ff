//! The factored basis `P_0 = 1`, `P_n = (z - α_{j_n}) P_{n-1}`.
//!
//! Derivatives at a point are computed by shifting each linear factor to the
//! evaluation point and multiplying truncated Taylor series, so no dense
//! expansion of `P_n` is ever needed for them.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::enumeration::{decompose, points_required};
use crate::error::{ForgeError, Result};
use crate::gaussian::GaussianRational;
use crate::rational::{self, Rational};
use crate::scalar::Scalar;

/// Bits used for the modulus bounds `U_k >= |α_k|` in the growth constants.
pub const GROWTH_PRECISION: u32 = 16;

/// Distinct points `α_1, α_2, ...`, stored 0-based.
///
/// `supplied` counts the leading points that came from the caller; anything
/// after them was appended by [`PointList::padded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointList {
    points: Vec<GaussianRational>,
    supplied: usize,
}

/// The `r`-th auxiliary point: `i/2, -i/2, i/3, -i/3, ...`.
pub fn auxiliary_point(r: usize) -> GaussianRational {
    let k = (r / 2 + 2) as i64;
    let sign = if r.is_multiple_of(2) { 1 } else { -1 };
    GaussianRational::new(rational::int(0), rational::ratio(sign, k))
}

impl PointList {
    pub fn new(points: Vec<GaussianRational>) -> Result<Self> {
        for (idx, p) in points.iter().enumerate() {
            if points[..idx].contains(p) {
                return Err(ForgeError::DuplicatePoint { index: idx + 1 });
            }
        }
        let supplied = points.len();
        Ok(Self { points, supplied })
    }

    /// Rebuilds a list whose tail past `supplied` was produced by padding.
    pub fn with_supplied(points: Vec<GaussianRational>, supplied: usize) -> Result<Self> {
        let mut list = Self::new(points)?;
        if supplied > list.points.len() {
            return Err(ForgeError::InvalidArgument("supplied count exceeds point count".into()));
        }
        list.supplied = supplied;
        Ok(list)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn supplied(&self) -> usize {
        self.supplied
    }

    pub fn as_slice(&self) -> &[GaussianRational] {
        &self.points
    }

    /// `α_j` for 1-based `j`.
    pub fn get(&self, j: u64) -> Option<&GaussianRational> {
        (j as usize).checked_sub(1).and_then(|k| self.points.get(k))
    }

    pub fn require(&self, j: u64) -> Result<&GaussianRational> {
        self.get(j).ok_or(ForgeError::InsufficientPoints { required: j as usize, available: self.len() })
    }

    /// Extends the list with auxiliary points until it holds `count` entries.
    ///
    /// The auxiliary sequence skips anything already present, so padding a
    /// padded list continues the same sequence.
    pub fn padded(&self, count: usize) -> Self {
        let mut out = self.clone();
        let mut r = 0;
        while out.points.len() < count {
            let cand = auxiliary_point(r);
            r += 1;
            if !out.points.contains(&cand) {
                out.points.push(cand);
            }
        }
        out
    }

    /// Padded so that every index up to `depth` has its point.
    pub fn padded_for_depth(&self, depth: u64) -> Result<Self> {
        Ok(self.padded(points_required(depth)? as usize))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// 1-based point index.
    pub index: u64,
    pub root: GaussianRational,
    pub mult: u32,
}

/// `P_n` as a multiset of linear factors plus its growth constant `C_n`,
/// with `|P_n(z)| <= C_n max(|z|, 1)^n` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub n: u64,
    pub factors: Vec<Factor>,
    pub growth: Rational,
}

/// Multiplies truncated Taylor coefficients (around some center) by `(w + d)`.
fn mul_linear(coeffs: &mut [GaussianRational], d: &GaussianRational) {
    for r in (0..coeffs.len()).rev() {
        let shifted = &coeffs[r] * d;
        coeffs[r] = if r > 0 { &coeffs[r - 1] + &shifted } else { shifted };
    }
}

/// Upper bound `1 + U` with `U >= |α|`.
pub fn growth_factor(root: &GaussianRational) -> Rational {
    Rational::one() + root.modulus_upper(GROWTH_PRECISION)
}

impl FactoredPoly {
    pub fn one() -> Self {
        Self { n: 0, factors: Vec::new(), growth: Rational::one() }
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|f| f.mult as u64).sum()
    }

    /// Multiplicity of the point with 1-based index `j` as a root.
    pub fn multiplicity(&self, j: u64) -> u32 {
        self.factors.iter().find(|f| f.index == j).map_or(0, |f| f.mult)
    }

    /// `(z - α_j) * self`.
    pub fn times_linear(&self, j: u64, root: &GaussianRational) -> Self {
        let mut factors = self.factors.clone();
        match factors.iter_mut().find(|f| f.index == j) {
            Some(f) => f.mult += 1,
            None => {
                factors.push(Factor { index: j, root: root.clone(), mult: 1 });
                factors.sort_by_key(|f| f.index);
            }
        }
        Self { n: self.n + 1, factors, growth: &self.growth * growth_factor(root) }
    }

    /// Exact `P^{(i)}(alpha)`.
    pub fn derivative_at(&self, i: u64, alpha: &GaussianRational) -> GaussianRational {
        let mut coeffs = vec![GaussianRational::zero(); i as usize + 1];
        coeffs[0] = GaussianRational::one();
        for f in &self.factors {
            let d = alpha - &f.root;
            for _ in 0..f.mult {
                mul_linear(&mut coeffs, &d);
            }
        }
        coeffs[i as usize].scale(&Rational::from_integer(rational::factorial(i)))
    }

    pub fn growth_constant(&self) -> &Rational {
        &self.growth
    }

    /// Dense coefficients, constant term first.
    pub fn expand(&self) -> Vec<GaussianRational> {
        let mut c = vec![GaussianRational::one()];
        for f in &self.factors {
            let neg = -&f.root;
            for _ in 0..f.mult {
                c.push(GaussianRational::zero());
                mul_linear(&mut c, &neg);
            }
        }
        c
    }
}

/// `P_0 ..= P_depth`.
pub fn build_prefix(points: &PointList, depth: u64) -> Result<Vec<FactoredPoly>> {
    let required = points_required(depth)? as usize;
    if points.len() < required {
        return Err(ForgeError::InsufficientPoints { required, available: points.len() });
    }
    let mut out = Vec::with_capacity(depth as usize + 1);
    out.push(FactoredPoly::one());
    for n in 1..=depth {
        let j = decompose(n)?.j;
        let next = out[n as usize - 1].times_linear(j, points.require(j)?);
        out.push(next);
    }
    Ok(out)
}

/// `P_k^{(order)}(alpha)` for `k = 0..count`, by incremental Taylor shifts.
pub fn derivative_values(
    points: &PointList,
    order: u64,
    alpha: &GaussianRational,
    count: u64,
) -> Result<Vec<GaussianRational>> {
    let mut coeffs = vec![GaussianRational::zero(); order as usize + 1];
    coeffs[0] = GaussianRational::one();
    let fact = Rational::from_integer(rational::factorial(order));
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..count {
        if k > 0 {
            let j = decompose(k)?.j;
            mul_linear(&mut coeffs, &(alpha - points.require(j)?));
        }
        out.push(coeffs[order as usize].scale(&fact));
    }
    Ok(out)
}

/// Growth constants `C_0..C_{count-1}`.
pub fn growth_constants(points: &PointList, count: u64) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(count as usize);
    let mut c = Rational::one();
    for k in 0..count {
        if k > 0 {
            c *= growth_factor(points.require(decompose(k)?.j)?);
        }
        out.push(c.clone());
    }
    Ok(out)
}

fn expand_scalar(p: &FactoredPoly) -> Vec<Scalar> {
    p.expand().into_iter().map(Scalar::from).collect()
}

/// Coefficients `c_k` with `poly = sum c_k P_k`, for dense `poly` (constant term first).
pub fn to_basis(points: &PointList, poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let Some(deg) = poly.iter().rposition(|c| !c.is_zero()) else {
        return Ok(vec![Scalar::zero()]);
    };
    let basis = build_prefix(points, deg as u64)?;
    let mut rem: Vec<Scalar> = poly[..=deg].to_vec();
    let mut out = vec![Scalar::zero(); deg + 1];
    for d in (0..=deg).rev() {
        let lead = rem[d].clone();
        if lead.is_zero() {
            continue;
        }
        for (r, b) in expand_scalar(&basis[d]).iter().enumerate() {
            if let Some(g) = b.as_gaussian() {
                rem[r] = &rem[r] - &lead.mul_gaussian(g);
            }
        }
        out[d] = lead;
    }
    Ok(out)
}

/// Dense coefficients of `sum c_k P_k`.
pub fn from_basis(points: &PointList, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    let basis = build_prefix(points, coeffs.len().saturating_sub(1) as u64)?;
    let mut out = vec![Scalar::zero(); coeffs.len().max(1)];
    for (c, p) in coeffs.iter().zip(&basis) {
        for (r, g) in p.expand().iter().enumerate() {
            out[r] = &out[r] + &c.mul_gaussian(g);
        }
    }
    Ok(out)
}
