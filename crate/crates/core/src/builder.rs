//! Recursive choice of the coefficients `a_k` of `f = sum a_k P_k`.
//!
//! At index `n` (pair `(i, j)`) the value `f^{(i)}(α_j)` only involves
//! `a_0..a_{n-1}`, and `a_{n-1}` enters with the nonzero weight
//! `p_n = P_{n-1}^{(i)}(α_j)`. So `β_n` can be steered to any point of a disc
//! around `s_n = sum_{k<n-1} a_k P_k^{(i)}(α_j)`. The disc radius is chosen
//! so that `|a_{n-1}| <= 1/(C_{n-1} (n-1)!)`, which keeps the series entire.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Signed;

use crate::dense::{member_of, sample_in_disc, DenseSetSpec};
use crate::enumeration::{compose, decompose};
use crate::error::{ForgeError, Result};
use crate::poly::{derivative_values, growth_constants, PointList};
use crate::rational::{self, Rational};
use crate::scalar::Scalar;

/// Dense target set for every `(point j, order s)` pair.
///
/// Lookup order: an explicit `(j, s)` entry, then a per-point entry, then the default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetAssignment {
    pub default: DenseSetSpec,
    pub per_point: BTreeMap<u64, DenseSetSpec>,
    pub explicit: BTreeMap<(u64, u64), DenseSetSpec>,
}

impl TargetAssignment {
    pub fn uniform(set: DenseSetSpec) -> Self {
        Self { default: set, per_point: BTreeMap::new(), explicit: BTreeMap::new() }
    }

    pub fn with_point(mut self, j: u64, set: DenseSetSpec) -> Self {
        self.per_point.insert(j, set);
        self
    }

    pub fn with_pair(mut self, j: u64, s: u64, set: DenseSetSpec) -> Self {
        self.explicit.insert((j, s), set);
        self
    }

    pub fn lookup(&self, j: u64, s: u64) -> &DenseSetSpec {
        self.explicit.get(&(j, s)).or_else(|| self.per_point.get(&j)).unwrap_or(&self.default)
    }

    pub fn validate(&self) -> Result<()> {
        self.default.validate()?;
        self.per_point.values().chain(self.explicit.values()).try_for_each(DenseSetSpec::validate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetRecord {
    pub n: u64,
    pub i: u64,
    pub j: u64,
    pub beta: Scalar,
    pub set: DenseSetSpec,
}

/// A finite stage of the construction together with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltFunction {
    pub points: PointList,
    pub targets: TargetAssignment,
    pub coeffs: Vec<Scalar>,
    pub records: Vec<TargetRecord>,
    /// `u_k` with certified `|a_k| <= u_k <= 1/(C_k k!)`.
    pub bounds: Vec<Rational>,
}

/// `1/(C_k k!)`.
pub fn coefficient_budget(growth: &Rational, k: u64) -> Rational {
    (growth * Rational::from_integer(rational::factorial(k))).recip()
}

fn certification(n: u64, reason: impl Into<String>) -> ForgeError {
    ForgeError::Certification { index: n, reason: reason.into() }
}

pub fn build(points: &PointList, targets: &TargetAssignment, depth: u64) -> Result<BuiltFunction> {
    if depth == 0 {
        return Err(ForgeError::InvalidArgument("build depth must be at least 1".into()));
    }
    targets.validate()?;
    let empty = BuiltFunction {
        points: points.clone(),
        targets: targets.clone(),
        coeffs: Vec::new(),
        records: Vec::new(),
        bounds: Vec::new(),
    };
    continue_to(empty, depth)
}

/// Continues the recursion of `f` to `depth` without touching existing coefficients.
pub fn extend(f: &BuiltFunction, depth: u64) -> Result<BuiltFunction> {
    if depth <= f.depth() {
        return Err(ForgeError::InvalidArgument(format!("new depth {depth} must exceed current depth {}", f.depth())));
    }
    continue_to(f.clone(), depth)
}

fn continue_to(mut f: BuiltFunction, depth: u64) -> Result<BuiltFunction> {
    f.points = f.points.padded_for_depth(depth)?;
    let growth = growth_constants(&f.points, depth)?;
    for n in f.depth() + 1..=depth {
        let t = decompose(n)?;
        let alpha = f
            .points
            .get(t.j)
            .cloned()
            .ok_or(ForgeError::InsufficientPoints { required: t.j as usize, available: f.points.len() })?;
        let set = f.targets.lookup(t.j, t.i).clone();

        let weights = derivative_values(&f.points, t.i, &alpha, n)?;
        let (pivot, earlier) = weights.split_last().expect("n >= 1");
        if pivot.is_zero() {
            return Err(certification(n, "pivot derivative P_{n-1}^{(i)}(α_j) vanished"));
        }
        let center: Scalar = f.coeffs.iter().zip(earlier).map(|(a, w)| a.mul_gaussian(w)).sum();

        let budget = coefficient_budget(&growth[n as usize - 1], n - 1);
        let pivot_lower = rational::sqrt_lower_positive(&pivot.norm_sqr());
        let radius = &pivot_lower * &budget / rational::int(2);

        let beta = sample_in_disc(&set, &center, &radius, true).map_err(|e| certification(n, e.to_string()))?;
        let coeff = (&beta - &center).div_gaussian(pivot)?;
        if coeff.is_zero() {
            return Err(certification(n, "selected coefficient is zero"));
        }
        let upper = coeff.modulus_upper(rational::bits_below(&budget) + 8);
        if upper > budget {
            return Err(certification(n, format!("|a_{}| bound {upper} exceeds {budget}", n - 1)));
        }
        f.coeffs.push(coeff);
        f.bounds.push(upper);
        f.records.push(TargetRecord { n, i: t.i, j: t.j, beta, set });
    }
    Ok(f)
}

impl BuiltFunction {
    pub fn depth(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// Exact `f^{(i)}(α_j)`; the sum is finite because later basis terms vanish there.
    pub fn exact_derivative_at_point(&self, i: u64, j: u64) -> Result<Scalar> {
        let n = compose(i, j)?;
        if n > self.depth() {
            return Err(ForgeError::OutOfDepth { n, depth: self.depth() });
        }
        let alpha = self
            .points
            .get(j)
            .ok_or(ForgeError::InsufficientPoints { required: j as usize, available: self.points.len() })?;
        let weights = derivative_values(&self.points, i, alpha, n)?;
        Ok(self.coeffs.iter().zip(&weights).map(|(a, w)| a.mul_gaussian(w)).sum())
    }

    /// Recomputes every record and certificate from the coefficients alone.
    pub fn verify(&self) -> Verification {
        let mut v = Verification::default();
        let depth = self.depth();
        if self.records.len() as u64 != depth || self.bounds.len() as u64 != depth {
            v.fail(0, Check::Shape, "coeffs, records and bounds differ in length");
            return v;
        }
        let growth = match growth_constants(&self.points, depth) {
            Ok(g) => g,
            Err(e) => {
                v.fail(0, Check::Shape, &e.to_string());
                return v;
            }
        };
        for n in 1..=depth {
            if let Err((check, msg)) = self.verify_index(n, &growth[n as usize - 1], &mut v) {
                v.fail(n, check, &msg);
                return v;
            }
        }
        v
    }

    fn verify_index(
        &self,
        n: u64,
        growth: &Rational,
        v: &mut Verification,
    ) -> core::result::Result<(), (Check, String)> {
        let k = n as usize - 1;
        let t = decompose(n).map_err(|e| (Check::Shape, e.to_string()))?;
        let rec = &self.records[k];
        if (rec.n, rec.i, rec.j) != (t.n, t.i, t.j) {
            return Err((
                Check::Shape,
                format!("record header ({}, {}, {}) should be ({n}, {}, {})", rec.n, rec.i, rec.j, t.i, t.j),
            ));
        }
        v.count(Check::Shape);

        let a = &self.coeffs[k];
        if a.is_zero() {
            return Err((Check::Nonzero, format!("coefficient a_{k} is zero")));
        }
        v.count(Check::Nonzero);

        let bound = &self.bounds[k];
        let budget = coefficient_budget(growth, k as u64);
        if bound > &budget || bound.is_negative() {
            return Err((Check::Bound, format!("bound u_{k} = {bound} exceeds 1/(C_{k} {k}!) = {budget}")));
        }
        if a.certify_modulus_le(bound, 1 << 14) != Some(true) {
            return Err((Check::Bound, format!("|a_{k}| <= {bound} could not be certified")));
        }
        v.count(Check::Bound);

        let alpha = self.points.get(t.j).ok_or((Check::Shape, format!("missing point {}", t.j)))?;
        let weights = derivative_values(&self.points, t.i, alpha, n).map_err(|e| (Check::Shape, e.to_string()))?;
        if weights[k].is_zero() {
            return Err((Check::Pivot, format!("P_{k}^({})(α_{}) vanishes", t.i, t.j)));
        }
        v.count(Check::Pivot);

        let beta: Scalar = self.coeffs[..n as usize].iter().zip(&weights).map(|(a, w)| a.mul_gaussian(w)).sum();
        if beta != rec.beta {
            return Err((Check::Record, format!("recomputed beta {beta} differs from recorded {}", rec.beta)));
        }
        v.count(Check::Record);

        let expected = self.targets.lookup(t.j, t.i);
        if &rec.set != expected {
            return Err((Check::Membership, format!("record set {} differs from assignment {expected}", rec.set)));
        }
        if !member_of(expected, &beta) {
            return Err((Check::Membership, format!("beta {beta} is not in {expected}")));
        }
        v.count(Check::Membership);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Shape,
    Nonzero,
    Bound,
    Pivot,
    Record,
    Membership,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Shape, Check::Nonzero, Check::Bound, Check::Pivot, Check::Record, Check::Membership];

    pub fn name(self) -> &'static str {
        match self {
            Check::Shape => "index-structure",
            Check::Nonzero => "nonzero-coefficient",
            Check::Bound => "coefficient-bound",
            Check::Pivot => "pivot-nonvanishing",
            Check::Record => "record-recomputation",
            Check::Membership => "target-membership",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub index: u64,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub passed: BTreeMap<Check, u64>,
    pub failure: Option<VerifyFailure>,
}

impl Verification {
    fn count(&mut self, c: Check) {
        *self.passed.entry(c).or_default() += 1;
    }

    fn fail(&mut self, index: u64, check: Check, detail: &str) {
        self.failure = Some(VerifyFailure { index, check, detail: detail.into() });
    }

    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    pub fn passed(&self, c: Check) -> u64 {
        self.passed.get(&c).copied().unwrap_or(0)
    }
}
