mod common;

use common::{dense_combination, distinct_points, g, horner};
use forge_core::builder::{coefficient_budget, Check};
use forge_core::exceptional::report_rows;
use forge_core::poly::growth_constants;
use forge_core::rational::{factorial, int};
use forge_core::{
    assign_targets, build, compose, decompose, extend, member_of, run_report, DenseSetSpec, ExceptionalSpec, PointList,
    Rational, Scalar, TargetAssignment,
};
use proptest::prelude::*;

fn set_strategy() -> impl Strategy<Value = DenseSetSpec> {
    prop_oneof![
        Just(DenseSetSpec::GaussianRational),
        Just(DenseSetSpec::Transcendental),
        Just(
            DenseSetSpec::shifted_lattice(Scalar::from_rational(Rational::new(1.into(), 2.into())), Scalar::tau_unit())
                .unwrap()
        ),
    ]
}

fn assignment() -> impl Strategy<Value = TargetAssignment> {
    (set_strategy(), proptest::collection::vec(set_strategy(), 0..4)).prop_map(|(d, per)| {
        per.into_iter().enumerate().fold(TargetAssignment::uniform(d), |t, (k, s)| t.with_point(k as u64 + 1, s))
    })
}

/// Upper bound of `|x|^2` from a tight enclosure.
fn modulus_sq_upper(x: &Scalar) -> Rational {
    let b = x.enclose(256);
    let re = if b.re_lo.clone() * &b.re_lo > b.re_hi.clone() * &b.re_hi { b.re_lo } else { b.re_hi };
    let im = if b.im_lo.clone() * &b.im_lo > b.im_hi.clone() * &b.im_hi { b.im_lo } else { b.im_hi };
    &re * &re + &im * &im
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn build_invariants(raw in distinct_points(4, 4), targets in assignment(), depth in 1u64..=16) {
        let pts = PointList::new(raw).unwrap();
        let f = build(&pts, &targets, depth).unwrap();
        prop_assert_eq!(f.depth(), depth);
        let growth = growth_constants(&f.points, depth).unwrap();
        let dense = dense_combination(f.points.as_slice(), &f.coeffs);
        for (k, a) in f.coeffs.iter().enumerate() {
            prop_assert!(!a.is_zero());
            let budget = coefficient_budget(&growth[k], k as u64);
            prop_assert_eq!(&budget, &(Rational::from_integer(factorial(k as u64)) * &growth[k]).recip());
            prop_assert!(modulus_sq_upper(a) <= &budget * &budget);
            let r = &f.records[k];
            let t = decompose(k as u64 + 1).unwrap();
            prop_assert_eq!((r.n, r.i, r.j), (k as u64 + 1, t.i, t.j));
            prop_assert!(member_of(&r.set, &r.beta));
            prop_assert_eq!(&r.set, targets.lookup(t.j, t.i));
            // The full dense polynomial agrees with the record at the construction point.
            let mut p = dense.clone();
            for _ in 0..t.i {
                p = common::derivative(&p);
            }
            prop_assert_eq!(&horner(&p, f.points.get(t.j).unwrap()), &r.beta);
        }
        let v = f.verify();
        prop_assert!(v.ok());
        for c in Check::ALL {
            prop_assert_eq!(v.passed(c), depth);
        }
        prop_assert_eq!(build(&pts, &targets, depth).unwrap(), f.clone());
        let longer = extend(&f, depth + 3).unwrap();
        prop_assert_eq!(&longer.coeffs[..depth as usize], &f.coeffs[..]);
        prop_assert_eq!(longer, build(&pts, &targets, depth + 3).unwrap());
    }

    #[test]
    fn exceptional_membership(in_a in proptest::collection::vec(any::<bool>(), 1..=5), s_max in 0u64..=2) {
        let raw = [g(0, 0), g(1, 0), g(0, 1), g(-1, 0), g(2, 1)];
        let spec = ExceptionalSpec::new(PointList::new(raw[..in_a.len()].to_vec()).unwrap(), in_a.clone()).unwrap();
        let depth = compose(s_max, in_a.len() as u64).unwrap();
        let report = run_report(&spec, s_max, depth).unwrap();
        prop_assert!(report.passes());
        prop_assert_eq!(report.rows.len(), in_a.len() * (s_max as usize + 1));
        for row in &report.rows {
            prop_assert_eq!(row.algebraic, row.beta.is_algebraic());
            prop_assert_eq!(row.in_a, in_a[row.j as usize - 1]);
        }
        prop_assert_eq!(report_rows(&report.function, &spec, s_max).unwrap(), report.rows);
        let t = assign_targets(&spec);
        for (k, &m) in in_a.iter().enumerate() {
            let want = if m { DenseSetSpec::GaussianRational } else { DenseSetSpec::Transcendental };
            prop_assert_eq!(t.lookup(k as u64 + 1, s_max), &want);
        }
    }
}

#[test]
fn depth_one_traces() {
    let pts = PointList::new(vec![g(0, 0)]).unwrap();
    let f = build(&pts, &TargetAssignment::uniform(DenseSetSpec::GaussianRational), 1).unwrap();
    assert_eq!(f.coeffs, [Scalar::from_rational(Rational::new(1.into(), 4.into()))]);
    assert_eq!(f.exact_derivative_at_point(0, 1).unwrap(), f.records[0].beta);
    let t = build(&pts, &TargetAssignment::uniform(DenseSetSpec::Transcendental), 1).unwrap();
    assert!(!t.coeffs[0].is_algebraic());
    assert!(modulus_sq_upper(&t.coeffs[0]) <= int(1));
    assert!(build(&pts, &TargetAssignment::uniform(DenseSetSpec::GaussianRational), 0).is_err());
}
