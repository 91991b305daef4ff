//! Target assignments that prescribe which construction points see algebraic
//! values, and the report checking the outcome on a finite prefix.

use alloc::vec::Vec;

use crate::builder::{build, BuiltFunction, TargetAssignment};
use crate::dense::{member_of, DenseSetSpec};
use crate::enumeration::compose;
use crate::error::{ForgeError, Result};
use crate::poly::PointList;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSpec {
    pub points: PointList,
    /// Membership in `A` of each supplied point, in order.
    pub in_a: Vec<bool>,
    /// Membership assumed for auxiliary points appended past the prefix.
    pub beyond_prefix: bool,
}

impl ExceptionalSpec {
    pub fn new(points: PointList, in_a: Vec<bool>) -> Result<Self> {
        let spec = Self { points, in_a, beyond_prefix: false };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.in_a.len() != self.points.supplied() {
            return Err(ForgeError::InvalidArgument(alloc::format!(
                "membership list has {} entries for {} points",
                self.in_a.len(),
                self.points.supplied()
            )));
        }
        Ok(())
    }

    pub fn prefix_len(&self) -> u64 {
        self.in_a.len() as u64
    }
}

fn set_for(member: bool) -> DenseSetSpec {
    if member {
        DenseSetSpec::GaussianRational
    } else {
        DenseSetSpec::Transcendental
    }
}

/// Algebraic targets at points of `A`, transcendental ones elsewhere, for every order.
pub fn assign_targets(spec: &ExceptionalSpec) -> TargetAssignment {
    spec.in_a.iter().enumerate().fold(TargetAssignment::uniform(set_for(spec.beyond_prefix)), |t, (k, &m)| {
        t.with_point(k as u64 + 1, set_for(m))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub j: u64,
    pub s: u64,
    pub beta: Scalar,
    pub algebraic: bool,
    pub in_a: bool,
}

impl ReportRow {
    pub fn passes(&self) -> bool {
        self.algebraic == self.in_a
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub function: BuiltFunction,
    pub rows: Vec<ReportRow>,
}

impl ExceptionalReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(ReportRow::passes)
    }
}

/// Smallest depth covering every `(s, j)` with `s <= s_max` on the prefix.
pub fn minimal_depth(spec: &ExceptionalSpec, s_max: u64) -> Result<u64> {
    compose(s_max, spec.prefix_len().max(1))
}

/// Rows `(j, s)` read off an already built function.
pub fn report_rows(f: &BuiltFunction, spec: &ExceptionalSpec, s_max: u64) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for (k, &in_a) in spec.in_a.iter().enumerate() {
        let j = k as u64 + 1;
        for s in 0..=s_max {
            let beta = f.exact_derivative_at_point(s, j)?;
            rows.push(ReportRow { j, s, algebraic: beta.is_algebraic(), beta, in_a });
        }
    }
    Ok(rows)
}

pub fn run_report(spec: &ExceptionalSpec, s_max: u64, depth: u64) -> Result<ExceptionalReport> {
    spec.validate()?;
    let minimal = minimal_depth(spec, s_max)?;
    if minimal > depth {
        return Err(ForgeError::InsufficientDepth { minimal, configured: depth });
    }
    let function = build(&spec.points, &assign_targets(spec), depth)?;
    let rows = report_rows(&function, spec, s_max)?;
    Ok(ExceptionalReport { function, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Every value lands in the given set.
    Stackel(DenseSetSpec),
    /// The point set, described by `set`, is mapped into itself.
    SelfMap(DenseSetSpec),
    GaussianRational,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Stackel(_) => "stackel",
            Self::SelfMap(_) => "self-map",
            Self::GaussianRational => "gaussian-rational",
        }
    }
}

pub fn preset_targets(preset: &Preset, points: &PointList) -> Result<TargetAssignment> {
    match preset {
        Preset::Stackel(set) => {
            set.validate()?;
            Ok(TargetAssignment::uniform(set.clone()))
        }
        Preset::GaussianRational => Ok(TargetAssignment::uniform(DenseSetSpec::GaussianRational)),
        Preset::SelfMap(set) => {
            if !matches!(set, DenseSetSpec::Rational | DenseSetSpec::GaussianRational) {
                return Err(ForgeError::UnsupportedPreset(alloc::format!(
                    "self-map needs a RATIONAL or GAUSSIAN_RATIONAL point set, got {}",
                    set.kind_name()
                )));
            }
            if let Some(k) =
                points.as_slice()[..points.supplied()].iter().position(|p| !member_of(set, &Scalar::from(p.clone())))
            {
                return Err(ForgeError::UnsupportedPreset(alloc::format!(
                    "point {} is not in {}",
                    k + 1,
                    set.kind_name()
                )));
            }
            Ok(TargetAssignment::uniform(set.clone()))
        }
    }
}
