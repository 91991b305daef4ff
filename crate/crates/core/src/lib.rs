//! Exact construction of transcendental entire functions `f = sum a_k P_k`
//! whose derivatives take prescribed kinds of values at a countable point set.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `forge` crate.
#![no_std]

extern crate alloc;

pub mod ball;
pub mod builder;
pub mod dense;
pub mod dyadic;
pub mod enumeration;
pub mod error;
pub mod eval;
pub mod exceptional;
pub mod gaussian;
pub mod literal;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod tau;

pub use ball::Ball;
pub use builder::{build, extend, BuiltFunction, TargetAssignment, TargetRecord};
pub use dense::{member_of, sample_in_disc, DenseSetSpec};
pub use dyadic::Dyadic;
pub use enumeration::{compose, decompose, IndexTriple};
pub use error::{ForgeError, Result};
pub use eval::{evaluate, evaluate_derivative, recover_coefficients, tail_bound, Evaluation, TailBound};
pub use exceptional::{
    assign_targets, preset_targets, run_report, ExceptionalReport, ExceptionalSpec, Preset, ReportRow,
};
pub use gaussian::GaussianRational;
pub use poly::{FactoredPoly, PointList};
pub use rational::Rational;
pub use scalar::Scalar;
pub use tau::TauOracle;
