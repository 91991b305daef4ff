//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use forge_core::rational::{int, ratio};
use forge_core::{GaussianRational, PointList, Rational, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

pub fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

pub fn points(v: &[GaussianRational]) -> PointList {
    PointList::new(v.to_vec()).unwrap()
}

/// `(j, i)` for `n = 1, 2, ...`, by walking the triangle row by row.
pub fn triangle_walk(count: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(count);
    let mut m = 0u64;
    while out.len() < count {
        for j in 1..=m + 1 {
            if out.len() == count {
                break;
            }
            out.push((j, m + 1 - j));
        }
        m += 1;
    }
    out
}

/// Dense coefficients (constant first) of `P_0..=P_depth`.
pub fn dense_basis(points: &[GaussianRational], depth: usize) -> Vec<Vec<GaussianRational>> {
    let walk = triangle_walk(depth);
    let mut out = vec![vec![GaussianRational::one()]];
    for &(j, _) in &walk {
        let alpha = &points[j as usize - 1];
        let prev = out.last().unwrap();
        let mut next = vec![GaussianRational::zero(); prev.len() + 1];
        for (r, c) in prev.iter().enumerate() {
            next[r + 1] = &next[r + 1] + c;
            next[r] = &next[r] - &(c * alpha);
        }
        out.push(next);
    }
    out
}

pub fn derivative(p: &[Scalar]) -> Vec<Scalar> {
    p.iter().enumerate().skip(1).map(|(r, c)| c.mul_gaussian(&GaussianRational::from_int(r as i64))).collect()
}

pub fn horner(p: &[Scalar], z: &GaussianRational) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| &acc.mul_gaussian(z) + c)
}

pub fn horner_g(p: &[GaussianRational], z: &GaussianRational) -> GaussianRational {
    p.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * z) + c)
}

/// Dense coefficients of `sum coeffs[k] P_k`.
pub fn dense_combination(points: &[GaussianRational], coeffs: &[Scalar]) -> Vec<Scalar> {
    let basis = dense_basis(points, coeffs.len());
    let mut out = vec![Scalar::zero(); coeffs.len() + 1];
    for (c, p) in coeffs.iter().zip(&basis) {
        for (r, b) in p.iter().enumerate() {
            out[r] = &out[r] + &c.mul_gaussian(b);
        }
    }
    out
}

/// `g^{(i_n)}(α_{j_n})` for `n = 1..=count`, by repeated dense differentiation.
pub fn dense_derivative_data(
    points: &[GaussianRational],
    coeffs: &[Scalar],
    count: usize,
) -> BTreeMap<(u64, u64), Scalar> {
    let poly = dense_combination(points, coeffs);
    let mut derivs = vec![poly];
    let mut out = BTreeMap::new();
    for (j, i) in triangle_walk(count) {
        while derivs.len() <= i as usize {
            let d = derivative(derivs.last().unwrap());
            derivs.push(d);
        }
        out.insert((i, j), horner(&derivs[i as usize], &points[j as usize - 1]));
    }
    out
}

pub fn small_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(p, q)| ratio(p, q))
}

pub fn small_gaussian(bound: i64) -> impl Strategy<Value = GaussianRational> {
    (small_rational(bound), small_rational(bound)).prop_map(|(a, b)| GaussianRational::new(a, b))
}

pub fn small_scalar(bound: i64) -> impl Strategy<Value = Scalar> {
    (small_gaussian(bound), small_gaussian(bound), any::<bool>())
        .prop_map(|(b, t, keep)| Scalar::new(b, if keep { t } else { GaussianRational::zero() }))
}

/// Distinct points with numerators and denominators bounded by `bound`.
pub fn distinct_points(bound: i64, max_len: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    proptest::collection::vec(small_gaussian(bound), 1..=max_len).prop_map(|mut v| {
        let mut seen = Vec::new();
        v.retain(|p| {
            let fresh = !seen.contains(p);
            if fresh {
                seen.push(p.clone());
            }
            fresh
        });
        v
    })
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}
