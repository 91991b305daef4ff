//! The subcommands, writing human-readable output to a caller-supplied sink.

use std::io::Write;
use std::path::Path;

use forge_core::builder::Check;
use forge_core::eval::evaluate_derivative_truncated;
use forge_core::exceptional::{minimal_depth, report_rows, ExceptionalReport};
use forge_core::literal::{parse_rational, parse_scalar};
use forge_core::{build, evaluate_derivative, extend, Ball, BuiltFunction, ForgeError, GaussianRational, Rational};

use crate::error::{CliError, CliResult, ExitKind};
use crate::format::{Artifact, BuildConfig, ConfigJson, ReportJson, ReportRowJson, TargetSource};
use crate::fsio::{read_text, write_atomic};

pub fn load_config(path: &Path) -> CliResult<BuildConfig> {
    ConfigJson::parse(&read_text(path)?)?.validate()
}

pub fn load_artifact(path: &Path) -> CliResult<Artifact> {
    Artifact::parse(&read_text(path)?)
}

fn summary(out: &mut dyn Write, f: &BuiltFunction, from: u64) -> CliResult<()> {
    writeln!(out, "n\ti\tj\tbeta\tbound")?;
    for (r, u) in f.records.iter().zip(&f.bounds).skip(from as usize) {
        writeln!(out, "{}\t{}\t{}\t{}\t{}", r.n, r.i, r.j, r.beta, u)?;
    }
    Ok(())
}

pub fn cmd_build(config: &Path, out_path: &Path, out: &mut dyn Write) -> CliResult<()> {
    let cfg = load_config(config)?;
    let function = build(&cfg.points, &cfg.targets, cfg.depth)?;
    let artifact = Artifact { function, working_precision: cfg.working_precision };
    write_atomic(out_path, &artifact.to_bytes())?;
    summary(out, &artifact.function, 0)?;
    writeln!(out, "wrote depth {} artifact to {}", artifact.function.depth(), out_path.display())?;
    Ok(())
}

pub fn cmd_extend(artifact: &Path, depth: u64, out_path: &Path, out: &mut dyn Write) -> CliResult<()> {
    let a = load_artifact(artifact)?;
    let old = a.function.depth();
    if depth <= old {
        return Err(CliError::field("--depth", format!("must exceed the artifact depth {old}")));
    }
    let function = extend(&a.function, depth)?;
    let extended = Artifact { function, working_precision: a.working_precision };
    write_atomic(out_path, &extended.to_bytes())?;
    summary(out, &extended.function, old)?;
    writeln!(out, "extended depth {old} -> {depth}, wrote {}", out_path.display())?;
    Ok(())
}

pub struct EvalRequest<'a> {
    pub z: &'a str,
    pub order: u64,
    pub width: &'a str,
    pub terms: Option<u64>,
}

pub fn cmd_eval(artifact: &Path, req: &EvalRequest<'_>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let z = parse_scalar(req.z).map_err(|e| CliError::field("--z", e))?;
    let width = parse_rational(req.width).map_err(|e| CliError::field("--width", e))?;
    if width <= Rational::from_integer(0.into()) {
        return Err(CliError::field("--width", "must be positive"));
    }
    let a = load_artifact(artifact)?;
    let prec = a.working_precision;
    let f = &a.function;
    let ball = Ball::from_scalar(&z, prec);
    let e = match req.terms {
        Some(t) => evaluate_derivative_truncated(f, &ball, req.order, t, &width, prec),
        None => evaluate_derivative(f, &ball, req.order, &width, prec),
    }
    .map_err(|e| CliError::field("--terms", e))?;
    let (re, im) = (&e.truncation.re, &e.truncation.im);
    writeln!(out, "terms\t{}", e.terms)?;
    writeln!(out, "order\t{}", e.order)?;
    writeln!(out, "center\t{}", GaussianRational::new(re.to_rational(), im.to_rational()))?;
    match &e.enclosure {
        Some(b) => {
            let w = b.width();
            writeln!(out, "radius\t{}", b.rad.to_rational())?;
            writeln!(out, "enclosure\t{:e}{:+e}i ± {:e}", re.to_f64(), im.to_f64(), b.rad.to_f64())?;
            writeln!(out, "width\t{}\t({:e})", w.to_rational(), w.to_f64())?;
            if !e.target_met {
                writeln!(
                    err,
                    "warning: achieved width {:e} exceeds target {width}; extend the artifact and retry",
                    w.to_f64()
                )?;
            }
        }
        None => {
            writeln!(out, "radius\tinfinite")?;
            writeln!(out, "width\tinfinite")?;
            writeln!(
                err,
                "warning: tail bound diverges for this |z| at {} terms; extend the artifact and retry",
                e.terms
            )?;
        }
    }
    Ok(())
}

pub fn cmd_verify(artifact: &Path, out: &mut dyn Write) -> CliResult<()> {
    let a = load_artifact(artifact)?;
    let v = a.function.verify();
    for c in Check::ALL {
        writeln!(out, "{}\t{}", c.name(), v.passed(c))?;
    }
    match v.failure {
        None => {
            writeln!(out, "verified {} records", a.function.depth())?;
            Ok(())
        }
        Some(fail) => Err(CliError::new(
            ExitKind::Verification,
            format!("record n={} failed check {}: {}", fail.index, fail.check.name(), fail.detail),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Tsv,
    Json,
}

pub fn report_tsv(report: &ExceptionalReport) -> String {
    let mut s = String::from("j\ts\tbeta\talgebraic\tinA\n");
    for r in &report.rows {
        s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.j, r.s, r.beta, r.algebraic, r.in_a));
    }
    s
}

pub fn report_json(report: &ExceptionalReport, s_max: u64) -> String {
    let json = ReportJson {
        passes: report.passes(),
        depth: report.function.depth(),
        s_max,
        rows: report
            .rows
            .iter()
            .map(|r| ReportRowJson { j: r.j, s: r.s, beta: r.beta.to_string(), algebraic: r.algebraic, in_a: r.in_a })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
    s.push('\n');
    s
}

pub struct ReportRequest<'a> {
    pub config: &'a Path,
    pub out: &'a Path,
    pub format: ReportFormat,
    pub artifact: Option<&'a Path>,
}

pub fn cmd_report(req: &ReportRequest<'_>, out: &mut dyn Write) -> CliResult<()> {
    let cfg = load_config(req.config)?;
    let TargetSource::Exceptional { spec, s_max } = &cfg.source else {
        return Err(CliError::field("exceptional", "report needs an `exceptional` block"));
    };
    let minimal = minimal_depth(spec, *s_max)?;
    if minimal > cfg.depth {
        return Err(ForgeError::InsufficientDepth { minimal, configured: cfg.depth }.into());
    }
    let function = build(&cfg.points, &cfg.targets, cfg.depth)?;
    let rows = report_rows(&function, spec, *s_max)?;
    let report = ExceptionalReport { function, rows };
    let text = match req.format {
        ReportFormat::Tsv => report_tsv(&report),
        ReportFormat::Json => report_json(&report, *s_max),
    };
    if let Some(path) = req.artifact {
        let a = Artifact { function: report.function.clone(), working_precision: cfg.working_precision };
        write_atomic(path, &a.to_bytes())?;
    }
    write_atomic(req.out, text.as_bytes())?;
    let failed = report.rows.iter().filter(|r| !r.passes()).count();
    writeln!(out, "{} rows, {} mismatches, minimal depth {minimal}", report.rows.len(), failed)?;
    if failed > 0 {
        let first = report.rows.iter().find(|r| !r.passes()).expect("counted");
        return Err(CliError::new(
            ExitKind::Verification,
            format!(
                "report fails at j={} s={}: algebraic={} but inA={}",
                first.j, first.s, first.algebraic, first.in_a
            ),
        ));
    }
    Ok(())
}
