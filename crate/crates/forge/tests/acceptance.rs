//! Acceptance criteria 1-8, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use forge::Artifact;
use forge_core::ball::DEFAULT_PRECISION as P;
use forge_core::enumeration::triangular;
use forge_core::eval::{evaluate_truncated, exp_majorant};
use forge_core::poly::derivative_values;
use forge_core::rational::{int, ratio};
use forge_core::{
    compose, decompose, recover_coefficients, run_report, Ball, ExceptionalSpec, GaussianRational, PointList, Rational,
    Scalar,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use serde_json::json;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn sample<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).expect("strategy").current()
}

fn small_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(p, q)| ratio(p, q))
}

fn small_gaussian(bound: i64) -> impl Strategy<Value = GaussianRational> {
    (small_rational(bound), small_rational(bound)).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn distinct_points(runner: &mut TestRunner, bound: i64, max_len: usize) -> Vec<GaussianRational> {
    let len = sample(runner, &(1..=max_len));
    let mut v: Vec<GaussianRational> = Vec::new();
    while v.len() < len {
        let p = sample(runner, &small_gaussian(bound));
        if !v.contains(&p) {
            v.push(p);
        }
    }
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 1..=100_000u64 {
        let t = decompose(n).map_err(|e| e.to_string())?;
        ensure(triangular(t.m).unwrap() + t.j == n && t.i == t.m + 1 - t.j, || format!("bad triple at n={n}"))?;
        ensure(compose(t.i, t.j) == Ok(n), || format!("compose(decompose({n})) != {n}"))?;
    }
    for sum in 1..=450u64 {
        for j in 1..=sum {
            let i = sum - j;
            let t = decompose(compose(i, j).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure((t.i, t.j) == (i, j), || format!("decompose(compose({i},{j})) = ({}, {})", t.i, t.j))?;
        }
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("10^5 indices and all i+j <= 450 in {:.2?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let mut checks = 0u64;
    for list in 0..20 {
        let raw = distinct_points(&mut runner, 10, 8);
        let pts = PointList::new(raw).map_err(|e| e.to_string())?.padded_for_depth(60).map_err(|e| e.to_string())?;
        for n in 1..=60u64 {
            let t = decompose(n).unwrap();
            let values = derivative_values(&pts, t.i, pts.get(t.j).unwrap(), 61).map_err(|e| e.to_string())?;
            ensure(!values[n as usize - 1].is_zero(), || format!("list {list}: pivot vanished at n={n}"))?;
            for (l, v) in values.iter().enumerate().skip(n as usize) {
                ensure(v.is_zero(), || format!("list {list}: P_{l}^({})(α_{}) != 0", t.i, t.j))?;
            }
            checks += 62 - n;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("20 point lists, {checks} exact checks in {:.2?}", start.elapsed()))
}

/// Dense-expansion oracle: `g^{(i_n)}(α_{j_n})` for `g = sum c_k P_k`.
fn dense_data(points: &[GaussianRational], coeffs: &[Scalar]) -> BTreeMap<(u64, u64), Scalar> {
    let mut basis = vec![GaussianRational::one()];
    let mut poly = vec![Scalar::zero(); coeffs.len()];
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            let alpha = &points[decompose(k as u64).unwrap().j as usize - 1];
            let mut next = vec![GaussianRational::zero(); basis.len() + 1];
            for (r, b) in basis.iter().enumerate() {
                next[r + 1] = &next[r + 1] + b;
                next[r] = &next[r] - &(b * alpha);
            }
            basis = next;
        }
        for (r, b) in basis.iter().enumerate() {
            poly[r] = &poly[r] + &c.mul_gaussian(b);
        }
    }
    let mut out = BTreeMap::new();
    for n in 1..=coeffs.len() as u64 {
        let t = decompose(n).unwrap();
        let mut d = poly.clone();
        for _ in 0..t.i {
            d = d
                .iter()
                .enumerate()
                .skip(1)
                .map(|(r, c)| c.mul_gaussian(&GaussianRational::from_int(r as i64)))
                .collect();
        }
        let z = &points[t.j as usize - 1];
        let v = d.iter().rev().fold(Scalar::zero(), |acc, c| &acc.mul_gaussian(z) + c);
        out.insert((t.i, t.j), v);
    }
    out
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let scalar = (small_gaussian(9), small_gaussian(9), proptest::bool::ANY)
        .prop_map(|(b, t, keep)| Scalar::new(b, if keep { t } else { GaussianRational::zero() }));
    let mut oracle_time = Duration::ZERO;
    for case in 0..100 {
        let raw = distinct_points(&mut runner, 6, 5);
        let len = sample(&mut runner, &(1usize..=30));
        let coeffs: Vec<Scalar> = (0..len).map(|_| sample(&mut runner, &scalar)).collect();
        let pts =
            PointList::new(raw).map_err(|e| e.to_string())?.padded_for_depth(len as u64).map_err(|e| e.to_string())?;
        let t0 = Instant::now();
        let data = dense_data(pts.as_slice(), &coeffs);
        oracle_time += t0.elapsed();
        let back = recover_coefficients(&pts, &data, len as u64).map_err(|e| e.to_string())?;
        ensure(back == coeffs, || format!("case {case}: recovery differs"))?;
    }
    let recovery = start.elapsed() - oracle_time;
    ensure(recovery < Duration::from_secs(30), || format!("recovery took {recovery:.2?}"))?;
    Ok(format!("100 vectors recovered exactly; recovery {recovery:.2?}, oracle {oracle_time:.2?}"))
}

fn forge(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().map_err(|e| e.to_string())?;
    if o.status.success() {
        Ok(String::from_utf8_lossy(&o.stdout).into_owned())
    } else {
        Err(format!("forge {} exited {:?}: {}", args[0], o.status.code(), String::from_utf8_lossy(&o.stderr).trim()))
    }
}

fn mixed_config() -> serde_json::Value {
    json!({
        "points": ["0", "1", "-1", "1/2", "i"],
        "depth": 36,
        "working_precision": 128,
        "targets": {
            "default": {"kind": "GAUSSIAN_RATIONAL"},
            "per_point": [
                {"j": 3, "set": {"kind": "TRANSCENDENTAL"}},
                {"j": 4, "set": {"kind": "SHIFTED_LATTICE", "c": "1/2", "d": "1*t"}}
            ],
            "explicit": [
                {"j": 1, "s": 0, "set": {"kind": "RATIONAL"}},
                {"j": 2, "s": 1, "set": {"kind": "SHIFTED_LATTICE", "c": "1/3", "d": "1/2+1*i"}}
            ]
        }
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn load(p: &Path) -> Result<Artifact, String> {
    Artifact::parse(&fs::read_to_string(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn criterion_3(dir: &Path) -> Outcome {
    let start = Instant::now();
    let cfg = dir.join("mixed.config.json");
    fs::write(&cfg, serde_json::to_string_pretty(&mixed_config()).unwrap()).map_err(|e| e.to_string())?;
    let out = dir.join("mixed.json");
    forge(&["build", "--config", path_str(&cfg), "--out", path_str(&out)])?;
    let report = forge(&["verify", path_str(&out)])?;
    for check in ["target-membership\t36", "coefficient-bound\t36", "nonzero-coefficient\t36"] {
        ensure(report.contains(check), || format!("verify output lacks `{check}`"))?;
    }
    let a = load(&out)?;
    let kinds: Vec<_> = a.function.records.iter().map(|r| r.set.kind_name()).collect();
    for kind in ["TRANSCENDENTAL", "RATIONAL", "SHIFTED_LATTICE"] {
        ensure(kinds.contains(&kind), || format!("no {kind} record"))?;
    }
    let pairs = a.function.records.iter().filter(|r| r.i + r.j <= 8).count();
    ensure(pairs == 36, || format!("{pairs} pairs with i+j <= 8"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("build + verify exit 0, 36 memberships/bounds/nonzero in {:.2?}", start.elapsed()))
}

fn criterion_5(dir: &Path) -> Outcome {
    let src = dir.join("mixed.json");
    let out = dir.join("depth40.json");
    forge(&["extend", path_str(&src), "--depth", "40", "--out", path_str(&out)])?;
    let f = load(&out)?.function;
    let mut summary = Vec::new();
    for z in [
        GaussianRational::from_rational(ratio(1, 2)),
        GaussianRational::from_int(2),
        GaussianRational::new(int(-1), int(1)),
    ] {
        let zb = Ball::from_gaussian(&z, P);
        let m = z.modulus_upper(64).max(int(1));
        let cap = exp_majorant(&m);
        let mut widths = Vec::new();
        for terms in [10u64, 20, 40] {
            let e = evaluate_truncated(&f, &zb, terms, &int(1), P).map_err(|e| e.to_string())?;
            let b = e.enclosure.ok_or_else(|| format!("z={z}, N={terms}: infinite width"))?;
            ensure(b.modulus_upper(P).to_rational() <= cap, || {
                format!("z={z}, N={terms}: |f| enclosure above the majorant")
            })?;
            widths.push(b.width());
        }
        ensure(widths[0] > widths[1] && widths[1] > widths[2], || format!("z={z}: widths not strictly decreasing"))?;
        summary.push(format!("z={z}: {:.1e}", widths[2].to_f64()));
    }
    Ok(format!("widths shrink over N=10,20,40 and stay under the majorant ({})", summary.join(", ")))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let lits = ["0", "1", "i", "-1", "1/2", "2", "-i", "1+1*i"];
    let raw: Vec<GaussianRational> = lits.iter().map(|s| s.parse().unwrap()).collect();
    let pts = PointList::new(raw.clone()).map_err(|e| e.to_string())?;
    let depth = compose(3, 8).unwrap();
    let member = |targets: &[&str]| -> Vec<bool> {
        raw.iter().map(|p| targets.iter().any(|t| &t.parse::<GaussianRational>().unwrap() == p)).collect()
    };
    let cases = [
        ("A={0,i,1+i}", member(&["0", "i", "1+1*i"])),
        ("A={0}", member(&["0"])),
        ("complement={1}", member(&["1"]).into_iter().map(|b| !b).collect()),
    ];
    for (name, in_a) in cases {
        let spec = ExceptionalSpec::new(pts.clone(), in_a).map_err(|e| e.to_string())?;
        let report = run_report(&spec, 3, depth).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.rows.len() == 32, || format!("{name}: {} rows", report.rows.len()))?;
        ensure(report.passes(), || format!("{name}: algebraic != inA on some row"))?;
    }
    Ok(format!("depth {depth}, 3 membership patterns x 32 rows pass in {:.2?}", start.elapsed()))
}

fn criterion_7(dir: &Path) -> Outcome {
    let a = load(&dir.join("mixed.json"))?;
    let zeros: Vec<_> = a.function.coeffs.iter().enumerate().filter(|(_, c)| c.is_zero()).map(|(k, _)| k).collect();
    ensure(a.function.coeffs.len() == 36 && zeros.is_empty(), || format!("zero coefficients at {zeros:?}"))?;
    Ok("a_0..a_35 all nonzero (exact)".into())
}

fn criterion_8(dir: &Path) -> Outcome {
    let cfg = dir.join("mixed.config.json");
    let again = dir.join("mixed.again.json");
    forge(&["build", "--config", path_str(&cfg), "--out", path_str(&again)])?;
    let a = fs::read(dir.join("mixed.json")).map_err(|e| e.to_string())?;
    let b = fs::read(&again).map_err(|e| e.to_string())?;
    ensure(a == b, || "artifacts differ".into())?;
    Ok(format!("two runs byte-identical ({} bytes)", a.len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: [Criterion<'_>; 8] = [
        ("enumeration bijection", Box::new(criterion_1)),
        ("basis vanishing structure", Box::new(criterion_2)),
        ("mixed-target build verifies", Box::new(|| criterion_3(dir.path()))),
        ("coefficient recovery round trip", Box::new(criterion_4)),
        ("convergence of enclosures", Box::new(|| criterion_5(dir.path()))),
        ("exceptional-set reports", Box::new(criterion_6)),
        ("non-polynomiality", Box::new(|| criterion_7(dir.path()))),
        ("determinism", Box::new(|| criterion_8(dir.path()))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
