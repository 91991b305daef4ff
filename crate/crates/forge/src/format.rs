//! JSON shapes for configs and artifacts. Every number that is not a plain
//! index is carried as an exact literal string.

use forge_core::literal::{parse_gaussian, parse_rational, parse_scalar};
use forge_core::{BuiltFunction, DenseSetSpec, ExceptionalSpec, PointList, Preset, TargetAssignment, TargetRecord};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const ARTIFACT_FORMAT: &str = "forge-artifact/1";
pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
}

impl SetJson {
    pub fn from_spec(set: &DenseSetSpec) -> Self {
        let (c, d) = match set {
            DenseSetSpec::ShiftedLattice { c, d } => (Some(c.to_string()), Some(d.to_string())),
            _ => (None, None),
        };
        Self { kind: set.kind_name().to_string(), c, d }
    }

    pub fn to_spec(&self, field: &str) -> CliResult<DenseSetSpec> {
        let lattice_only = |name: &str, v: &Option<String>| match v {
            Some(_) => Err(CliError::field(&format!("{field}.{name}"), format!("not allowed for kind {}", self.kind))),
            None => Ok(()),
        };
        let simple = |set: DenseSetSpec| -> CliResult<DenseSetSpec> {
            lattice_only("c", &self.c)?;
            lattice_only("d", &self.d)?;
            Ok(set)
        };
        match self.kind.as_str() {
            "GAUSSIAN_RATIONAL" => simple(DenseSetSpec::GaussianRational),
            "RATIONAL" => simple(DenseSetSpec::Rational),
            "TRANSCENDENTAL" => simple(DenseSetSpec::Transcendental),
            "SHIFTED_LATTICE" => {
                let part = |name: &str, v: &Option<String>| {
                    let text = v.as_deref().ok_or_else(|| CliError::field(&format!("{field}.{name}"), "missing"))?;
                    parse_scalar(text).map_err(|e| CliError::field(&format!("{field}.{name}"), e))
                };
                let (c, d) = (part("c", &self.c)?, part("d", &self.d)?);
                DenseSetSpec::shifted_lattice(c, d).map_err(|e| CliError::field(&format!("{field}.d"), e))
            }
            other => Err(CliError::field(&format!("{field}.kind"), format!("unknown set kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointTarget {
    pub j: u64,
    pub set: SetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairTarget {
    pub j: u64,
    pub s: u64,
    pub set: SetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetsJson {
    pub default: SetJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_point: Vec<PointTarget>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub explicit: Vec<PairTarget>,
}

impl TargetsJson {
    pub fn from_assignment(t: &TargetAssignment) -> Self {
        Self {
            default: SetJson::from_spec(&t.default),
            per_point: t.per_point.iter().map(|(&j, s)| PointTarget { j, set: SetJson::from_spec(s) }).collect(),
            explicit: t
                .explicit
                .iter()
                .map(|(&(j, s), set)| PairTarget { j, s, set: SetJson::from_spec(set) })
                .collect(),
        }
    }

    pub fn to_assignment(&self, field: &str) -> CliResult<TargetAssignment> {
        let mut t = TargetAssignment::uniform(self.default.to_spec(&format!("{field}.default"))?);
        for (k, p) in self.per_point.iter().enumerate() {
            let f = format!("{field}.per_point[{k}]");
            if p.j == 0 {
                return Err(CliError::field(&format!("{f}.j"), "point indices start at 1"));
            }
            if t.per_point.contains_key(&p.j) {
                return Err(CliError::field(&format!("{f}.j"), format!("point {} assigned twice", p.j)));
            }
            t = t.with_point(p.j, p.set.to_spec(&format!("{f}.set"))?);
        }
        for (k, p) in self.explicit.iter().enumerate() {
            let f = format!("{field}.explicit[{k}]");
            if p.j == 0 {
                return Err(CliError::field(&format!("{f}.j"), "point indices start at 1"));
            }
            if t.explicit.contains_key(&(p.j, p.s)) {
                return Err(CliError::field(&f, format!("pair (j={}, s={}) assigned twice", p.j, p.s)));
            }
            t = t.with_pair(p.j, p.s, p.set.to_spec(&format!("{f}.set"))?);
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<SetJson>,
}

impl PresetJson {
    pub fn to_preset(&self, field: &str) -> CliResult<Preset> {
        let set = || {
            self.set
                .as_ref()
                .ok_or_else(|| CliError::field(&format!("{field}.set"), format!("required by preset `{}`", self.name)))?
                .to_spec(&format!("{field}.set"))
        };
        match self.name.as_str() {
            "stackel" => Ok(Preset::Stackel(set()?)),
            "self-map" => Ok(Preset::SelfMap(set()?)),
            "gaussian-rational" => match self.set {
                Some(_) => Err(CliError::field(&format!("{field}.set"), "not used by preset `gaussian-rational`")),
                None => Ok(Preset::GaussianRational),
            },
            other => Err(CliError::field(&format!("{field}.name"), format!("unknown preset `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExceptionalJson {
    pub in_a: Vec<bool>,
    #[serde(default)]
    pub s_max: u64,
    #[serde(default)]
    pub beyond_prefix: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub points: Vec<String>,
    pub depth: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub working_precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<TargetsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalJson>,
}

/// Where the target assignment of a config came from.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSource {
    Explicit,
    Preset(Preset),
    Exceptional { spec: ExceptionalSpec, s_max: u64 },
}

/// A validated config.
#[derive(Clone, Debug)]
pub struct BuildConfig {
    pub points: PointList,
    pub depth: u64,
    pub working_precision: u32,
    pub targets: TargetAssignment,
    pub source: TargetSource,
}

pub fn parse_points(field: &str, literals: &[String]) -> CliResult<PointList> {
    let mut points = Vec::with_capacity(literals.len());
    for (k, lit) in literals.iter().enumerate() {
        let p = parse_gaussian(lit).map_err(|e| CliError::field(&format!("{field}[{k}]"), e))?;
        if let Some(first) = points.iter().position(|q| q == &p) {
            return Err(CliError::field(&format!("{field}[{k}]"), format!("duplicate of {field}[{first}] (`{lit}`)")));
        }
        points.push(p);
    }
    PointList::new(points).map_err(|e| CliError::field(field, e))
}

fn check_precision(p: Option<u32>) -> CliResult<u32> {
    let p = p.unwrap_or(DEFAULT_PRECISION);
    if p < MIN_PRECISION {
        return Err(CliError::field("working_precision", format!("must be at least {MIN_PRECISION}, got {p}")));
    }
    Ok(p)
}

impl ConfigJson {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("config: {e}")))
    }

    pub fn validate(&self) -> CliResult<BuildConfig> {
        if self.points.is_empty() {
            return Err(CliError::field("points", "at least one point is required"));
        }
        let points = parse_points("points", &self.points)?;
        if self.depth == 0 {
            return Err(CliError::field("depth", "must be at least 1"));
        }
        let working_precision = check_precision(self.working_precision)?;
        let given = [self.targets.is_some(), self.preset.is_some(), self.exceptional.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::field("targets", "exactly one of `targets`, `preset`, `exceptional` must be given"));
        }
        let (targets, source) = if let Some(t) = &self.targets {
            (t.to_assignment("targets")?, TargetSource::Explicit)
        } else if let Some(p) = &self.preset {
            let preset = p.to_preset("preset")?;
            let t = forge_core::preset_targets(&preset, &points).map_err(|e| CliError::field("preset", e))?;
            (t, TargetSource::Preset(preset))
        } else {
            let e = self.exceptional.as_ref().expect("checked above");
            if e.in_a.len() != points.len() {
                return Err(CliError::field(
                    "exceptional.in_a",
                    format!("has {} entries for {} points", e.in_a.len(), points.len()),
                ));
            }
            let spec = ExceptionalSpec { points: points.clone(), in_a: e.in_a.clone(), beyond_prefix: e.beyond_prefix };
            (forge_core::assign_targets(&spec), TargetSource::Exceptional { spec, s_max: e.s_max })
        };
        targets.validate().map_err(|e| CliError::field("targets", e))?;
        Ok(BuildConfig { points, depth: self.depth, working_precision, targets, source })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordJson {
    pub n: u64,
    pub i: u64,
    pub j: u64,
    pub beta: String,
    pub set: SetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtifactJson {
    pub format: String,
    pub points: Vec<String>,
    pub supplied_points: usize,
    pub depth: u64,
    pub working_precision: u32,
    pub targets: TargetsJson,
    pub coeffs: Vec<String>,
    pub records: Vec<RecordJson>,
    pub bounds: Vec<String>,
}

/// A deserialized artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub function: BuiltFunction,
    pub working_precision: u32,
}

impl Artifact {
    pub fn to_json(&self) -> ArtifactJson {
        let f = &self.function;
        ArtifactJson {
            format: ARTIFACT_FORMAT.to_string(),
            points: f.points.as_slice().iter().map(ToString::to_string).collect(),
            supplied_points: f.points.supplied(),
            depth: f.depth(),
            working_precision: self.working_precision,
            targets: TargetsJson::from_assignment(&f.targets),
            coeffs: f.coeffs.iter().map(ToString::to_string).collect(),
            records: f
                .records
                .iter()
                .map(|r| RecordJson {
                    n: r.n,
                    i: r.i,
                    j: r.j,
                    beta: r.beta.to_string(),
                    set: SetJson::from_spec(&r.set),
                })
                .collect(),
            bounds: f.bounds.iter().map(ToString::to_string).collect(),
        }
    }

    /// Canonical bytes: pretty JSON with a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(&self.to_json()).expect("artifact serializes");
        out.push(b'\n');
        out
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let json: ArtifactJson =
            serde_json::from_str(text).map_err(|e| CliError::validation(format!("artifact: {e}")))?;
        json.to_artifact()
    }
}

impl ArtifactJson {
    /// Structural decoding only; nothing here checks the mathematics.
    pub fn to_artifact(&self) -> CliResult<Artifact> {
        if self.format != ARTIFACT_FORMAT {
            return Err(CliError::field("format", format!("expected `{ARTIFACT_FORMAT}`, got `{}`", self.format)));
        }
        let list = parse_points("points", &self.points)?;
        let points = PointList::with_supplied(list.as_slice().to_vec(), self.supplied_points)
            .map_err(|e| CliError::field("supplied_points", e))?;
        let working_precision = check_precision(Some(self.working_precision))?;
        let depth = self.depth as usize;
        for (name, len) in
            [("coeffs", self.coeffs.len()), ("records", self.records.len()), ("bounds", self.bounds.len())]
        {
            if len != depth {
                return Err(CliError::field(name, format!("has {len} entries for depth {depth}")));
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| parse_scalar(c).map_err(|e| CliError::field(&format!("coeffs[{k}]"), e)))
            .collect::<CliResult<Vec<_>>>()?;
        let bounds = self
            .bounds
            .iter()
            .enumerate()
            .map(|(k, c)| parse_rational(c).map_err(|e| CliError::field(&format!("bounds[{k}]"), e)))
            .collect::<CliResult<Vec<_>>>()?;
        let records = self
            .records
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let f = format!("records[{k}]");
                Ok(TargetRecord {
                    n: r.n,
                    i: r.i,
                    j: r.j,
                    beta: parse_scalar(&r.beta).map_err(|e| CliError::field(&format!("{f}.beta"), e))?,
                    set: r.set.to_spec(&format!("{f}.set"))?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        let targets = self.targets.to_assignment("targets")?;
        let function = BuiltFunction { points, targets, coeffs, records, bounds };
        Ok(Artifact { function, working_precision })
    }
}

/// Exceptional-set report rows keyed for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRowJson {
    pub j: u64,
    pub s: u64,
    pub beta: String,
    pub algebraic: bool,
    #[serde(rename = "inA")]
    pub in_a: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub passes: bool,
    pub depth: u64,
    pub s_max: u64,
    pub rows: Vec<ReportRowJson>,
}
