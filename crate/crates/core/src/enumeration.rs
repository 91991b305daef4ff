//! Triangular bookkeeping `n = m(m+1)/2 + j`, `i = m + 1 - j`.
//!
//! Row `m` holds the indices `n` whose pair `(i, j)` has `i + j = m + 1`,
//! walked with `j` increasing. Every pair of derivative order `i >= 0` and
//! point index `j >= 1` is hit exactly once.

use crate::error::{ForgeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexTriple {
    pub n: u64,
    /// Row.
    pub m: u64,
    /// Point index, `1 <= j <= m + 1`.
    pub j: u64,
    /// Derivative order.
    pub i: u64,
}

pub fn triangular(m: u64) -> Option<u64> {
    m.checked_mul(m + 1).map(|x| x / 2)
}

pub fn decompose(n: u64) -> Result<IndexTriple> {
    if n == 0 {
        return Err(ForgeError::Domain("series index must be at least 1".into()));
    }
    // Largest m with m(m+1)/2 < n, i.e. ceil((sqrt(8n+1)-1)/2) - 1.
    let disc = (8 * n as u128 + 1).isqrt();
    let mut m = ((disc - 1) / 2) as u64;
    while triangular(m).ok_or(ForgeError::Overflow)? >= n {
        m -= 1;
    }
    while triangular(m + 1).ok_or(ForgeError::Overflow)? < n {
        m += 1;
    }
    let j = n - triangular(m).ok_or(ForgeError::Overflow)?;
    Ok(IndexTriple { n, m, j, i: m + 1 - j })
}

pub fn compose(i: u64, j: u64) -> Result<u64> {
    if j == 0 {
        return Err(ForgeError::Domain("point index must be at least 1".into()));
    }
    let s = i.checked_add(j).ok_or(ForgeError::Overflow)?;
    s.checked_mul(s - 1).map(|x| x / 2).and_then(|t| t.checked_add(j)).ok_or(ForgeError::Overflow)
}

/// Number of points `α_1, α_2, ...` touched by indices `1..=depth`.
pub fn points_required(depth: u64) -> Result<u64> {
    if depth == 0 {
        return Ok(0);
    }
    let t = decompose(depth)?;
    Ok(t.j.max(t.m))
}
