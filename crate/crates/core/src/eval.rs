//! Certified evaluation of `f = sum a_k P_k` away from the construction points,
//! and exact coefficient recovery from derivative data.
//!
//! The build guarantees `|a_k| |P_k(z)| <= M^k / k!` with `M = max(|z|, 1)`, so
//! everything past the truncation is dominated by an exponential tail.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::ball::Ball;
use crate::builder::BuiltFunction;
use crate::dyadic::{Dyadic, Round};
use crate::enumeration::decompose;
use crate::error::{ForgeError, Result};
use crate::poly::{derivative_values, PointList};
use crate::rational::{self, Rational};
use crate::scalar::Scalar;

/// Majorant of `sum_{k > n} M^k / k!`; `bound` is `None` when the closed form does not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub n: u64,
    pub m: Rational,
    pub bound: Option<Rational>,
}

impl TailBound {
    pub fn is_finite(&self) -> bool {
        self.bound.is_some()
    }
}

/// `M^(n+1)/(n+1)! * (n+2)/(n+2-M)` for `M < n+2`.
pub fn tail_bound(n: u64, m: &Rational) -> TailBound {
    let bound = if m.is_zero() {
        Some(Rational::zero())
    } else {
        let n2 = Rational::from_integer((n + 2).into());
        (m < &n2).then(|| {
            let first = num_traits::pow(m.clone(), n as usize + 1) / Rational::from_integer(rational::factorial(n + 1));
            first * &n2 / (&n2 - m)
        })
    };
    TailBound { n, m: m.clone(), bound }
}

/// Value of the exponential majorant `sum_{k<=K} M^k/k! + tail(K, M)` for the smallest usable `K`.
pub fn exp_majorant(m: &Rational) -> Rational {
    let mut k = 0u64;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    loop {
        if let Some(tail) = tail_bound(k, m).bound {
            return sum + tail;
        }
        k += 1;
        term = term * m / Rational::from_integer(k.into());
        sum += &term;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// Number of series terms summed.
    pub terms: u64,
    /// Derivative order.
    pub order: u64,
    /// Enclosure of the truncated sum alone.
    pub truncation: Ball,
    /// Bound added for the omitted terms.
    pub tail: TailBound,
    /// Enclosure of the full series, absent when the tail bound is infinite.
    pub enclosure: Option<Ball>,
    pub target_met: bool,
}

impl Evaluation {
    pub fn width(&self) -> Option<Rational> {
        self.enclosure.as_ref().map(|b| b.width().to_rational())
    }
}

fn max1(x: Dyadic) -> Rational {
    rational::max_ref(&x.to_rational(), &Rational::one()).clone()
}

/// `sum_{k<terms} a_k P_k^{(order)}(z)` via truncated Taylor arrays in `h = w - z`.
fn truncated_sum(f: &BuiltFunction, z: &Ball, order: u64, terms: u64, prec: u32) -> Result<Ball> {
    let len = order as usize + 1;
    let mut taylor = vec![Ball::zero(); len];
    taylor[0] = Ball::one();
    let mut acc = Ball::zero();
    for k in 0..terms {
        if k > 0 {
            let root = f.points.require(decompose(k)?.j)?;
            let shift = z.sub(&Ball::from_gaussian(root, prec), prec);
            for r in (0..len).rev() {
                let scaled = taylor[r].mul(&shift, prec);
                taylor[r] = if r > 0 { taylor[r - 1].add(&scaled, prec) } else { scaled };
            }
        }
        let a = Ball::from_scalar(&f.coeffs[k as usize], prec);
        acc = acc.add(&a.mul(&taylor[order as usize], prec), prec);
    }
    let fact = Dyadic::new(rational::factorial(order), 0);
    Ok(acc.mul(&Ball::point(fact, Dyadic::zero()), prec))
}

fn finish(
    truncation: Ball,
    tail: TailBound,
    terms: u64,
    order: u64,
    scale: &Rational,
    width: &Rational,
    prec: u32,
) -> Evaluation {
    let enclosure = tail.bound.as_ref().map(|b| {
        let extra = Dyadic::from_rational(&(b * scale), prec, Round::Ceil);
        truncation.inflate(&extra, prec)
    });
    let target_met = enclosure.as_ref().is_some_and(|e| &e.width().to_rational() <= width);
    Evaluation { terms, order, truncation, tail, enclosure, target_met }
}

fn check_terms(f: &BuiltFunction, terms: u64) -> Result<()> {
    if terms == 0 || terms > f.depth() {
        return Err(ForgeError::InvalidArgument(alloc::format!(
            "truncation must use 1..={} terms, got {terms}",
            f.depth()
        )));
    }
    Ok(())
}

/// Encloses `f(z)` using every coefficient of `f`.
pub fn evaluate(f: &BuiltFunction, z: &Ball, width: &Rational, prec: u32) -> Result<Evaluation> {
    evaluate_truncated(f, z, f.depth(), width, prec)
}

/// Encloses `f(z)` from the first `terms` coefficients plus the tail bound.
pub fn evaluate_truncated(f: &BuiltFunction, z: &Ball, terms: u64, width: &Rational, prec: u32) -> Result<Evaluation> {
    check_terms(f, terms)?;
    let m = max1(z.modulus_upper(prec));
    let truncation = truncated_sum(f, z, 0, terms, prec)?;
    Ok(finish(truncation, tail_bound(terms - 1, &m), terms, 0, &Rational::one(), width, prec))
}

/// Encloses `f^{(s)}(z)`; the tail uses the Cauchy estimate on the unit circle around `z`.
pub fn evaluate_derivative(f: &BuiltFunction, z: &Ball, s: u64, width: &Rational, prec: u32) -> Result<Evaluation> {
    evaluate_derivative_truncated(f, z, s, f.depth(), width, prec)
}

pub fn evaluate_derivative_truncated(
    f: &BuiltFunction,
    z: &Ball,
    s: u64,
    terms: u64,
    width: &Rational,
    prec: u32,
) -> Result<Evaluation> {
    if s == 0 {
        return evaluate_truncated(f, z, terms, width, prec);
    }
    check_terms(f, terms)?;
    let m = z.modulus_upper(prec).to_rational() + Rational::one();
    let truncation = truncated_sum(f, z, s, terms, prec)?;
    let scale = Rational::from_integer(rational::factorial(s));
    Ok(finish(truncation, tail_bound(terms - 1, &m), terms, s, &scale, width, prec))
}

/// Exact `g^{(i_n)}(α_{j_n})` for `n = 1..=count` where `g = sum coeffs[k] P_k`.
pub fn derivative_data(points: &PointList, coeffs: &[Scalar], count: u64) -> Result<BTreeMap<(u64, u64), Scalar>> {
    let points = points.padded_for_depth(count.max(coeffs.len() as u64))?;
    let mut out = BTreeMap::new();
    for n in 1..=count {
        let t = decompose(n)?;
        let alpha = points.require(t.j)?;
        let weights = derivative_values(&points, t.i, alpha, coeffs.len() as u64)?;
        let v: Scalar = coeffs.iter().zip(&weights).map(|(a, w)| a.mul_gaussian(w)).sum();
        out.insert((t.i, t.j), v);
    }
    Ok(out)
}

/// Peels off `b_0, ..., b_{count-1}` from the derivative values `(i, j) -> g^{(i)}(α_j)`.
pub fn recover_coefficients(
    points: &PointList,
    data: &BTreeMap<(u64, u64), Scalar>,
    count: u64,
) -> Result<Vec<Scalar>> {
    let points = points.padded_for_depth(count)?;
    let mut out: Vec<Scalar> = Vec::with_capacity(count as usize);
    for n in 1..=count {
        let t = decompose(n)?;
        let value = data.get(&(t.i, t.j)).ok_or(ForgeError::MissingData { i: t.i, j: t.j })?;
        let weights = derivative_values(&points, t.i, points.require(t.j)?, n)?;
        let (pivot, earlier) = weights.split_last().expect("n >= 1");
        let known: Scalar = out.iter().zip(earlier).map(|(b, w)| b.mul_gaussian(w)).sum();
        out.push((value - &known).div_gaussian(pivot)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::DEFAULT_PRECISION as P;
    use crate::builder::{build, TargetAssignment};
    use crate::dense::DenseSetSpec;
    use crate::gaussian::GaussianRational;
    use crate::rational::{int, ratio};

    fn points(v: &[(i64, i64)]) -> PointList {
        PointList::new(v.iter().map(|&(a, b)| GaussianRational::new(int(a), int(b))).collect()).unwrap()
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_bound(3, &int(0)).bound, Some(int(0)));
        assert_eq!(tail_bound(3, &int(1)).bound, Some(ratio(5, 96)));
        assert_eq!(tail_bound(1, &int(4)).bound, None);
        assert_eq!(tail_bound(0, &int(1)).bound, Some(int(2)));
    }

    #[test]
    fn depth_one_at_origin() {
        let f = build(&points(&[(0, 0)]), &TargetAssignment::uniform(DenseSetSpec::GaussianRational), 1).unwrap();
        let e = evaluate(&f, &Ball::zero(), &int(1), P).unwrap();
        let b = e.enclosure.unwrap();
        assert!(b.contains_gaussian(&GaussianRational::from_rational(ratio(1, 4))));
        assert!(b.rad.to_rational() <= int(3));
        assert!(!e.target_met);
    }

    #[test]
    fn constant_truncation_has_zero_derivative() {
        let f = build(&points(&[(0, 0)]), &TargetAssignment::uniform(DenseSetSpec::GaussianRational), 1).unwrap();
        let e = evaluate_derivative(&f, &Ball::zero(), 1, &int(1), P).unwrap();
        assert_eq!(e.truncation, Ball::zero());
        // Cauchy tail 1! * tail(0, |z| + 1) = 2.
        assert_eq!(e.enclosure.unwrap().rad.to_rational(), int(2));
    }

    #[test]
    fn recovers_constant_one() {
        let pts = points(&[(0, 0), (1, 0)]);
        let data = derivative_data(&pts, &[Scalar::from_rational(int(1))], 6).unwrap();
        let b = recover_coefficients(&pts, &data, 6).unwrap();
        assert_eq!(b[0], Scalar::from_rational(int(1)));
        assert!(b[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn missing_entry_is_reported() {
        let pts = points(&[(0, 0)]);
        let err = recover_coefficients(&pts, &BTreeMap::new(), 1).unwrap_err();
        assert_eq!(err, ForgeError::MissingData { i: 0, j: 1 });
    }

    #[test]
    fn recovers_built_coefficients() {
        let pts = points(&[(0, 0), (1, 0)]);
        let f = build(&pts, &TargetAssignment::uniform(DenseSetSpec::Transcendental), 8).unwrap();
        let data = f.records.iter().map(|r| ((r.i, r.j), r.beta.clone())).collect();
        assert_eq!(recover_coefficients(&f.points, &data, 8).unwrap(), f.coeffs);
    }
}
