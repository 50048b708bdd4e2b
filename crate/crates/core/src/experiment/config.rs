use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::almost_periodic::TrigPolynomial;
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::group::{fixtures, CompactGroup, FiniteTable, FiniteTableDoc, GroupFamily, GroupPoint, Quaternion};
use crate::levy::{RationalTriple, StepDistribution, DEFAULT_DT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Simulate,
    Classify,
    Verify,
    Benford,
    Sweep,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Classify => "classify",
            ExperimentKind::Verify => "verify",
            ExperimentKind::Benford => "benford",
            ExperimentKind::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Torus {
        #[serde(default = "one")]
        dim: usize,
    },
    /// A builtin (`Z<n>`, `S3`, `S4`, `D4`, `Q8`, `A4`) or an explicit table.
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        builtin: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<FiniteTableDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table_file: Option<String>,
    },
    Rotation3d,
}

impl GroupSpec {
    pub fn build(&self) -> Result<CompactGroup> {
        match self {
            GroupSpec::Torus { dim } => CompactGroup::torus(*dim),
            GroupSpec::Rotation3d => Ok(CompactGroup::rotation3d()),
            GroupSpec::Finite {
                builtin,
                table,
                table_file,
            } => {
                let t = match (builtin, table, table_file) {
                    (Some(name), None, None) => fixtures::builtin(name)?,
                    (None, Some(doc), None) => FiniteTable::from_doc(doc.clone())?,
                    (None, None, Some(path)) => FiniteTable::from_json(&std::fs::read_to_string(path)?)?,
                    _ => {
                        return Err(Error::Config(
                            "finite group needs exactly one of builtin, table, table_file".into(),
                        ))
                    }
                };
                Ok(CompactGroup::finite(t))
            }
        }
    }
}

/// One step of a random walk. `point` is written in the group's notation:
/// torus coordinates as exact reals (a list, or a scalar on `T`), a finite
/// group element by label or index, a rotation as `{"axis": [x, y, z],
/// "angle": a}` or `{"quaternion": [w, x, y, z]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    pub point: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProcessSpec {
    /// Real Lévy process with exact triple, projected to `T`.
    Levy { triple: RationalTriple },
    /// Compound-Poisson product of i.i.d. steps in continuous time.
    Jump {
        steps: Vec<StepSpec>,
        #[serde(default = "unit_rate")]
        rate: f64,
    },
    /// Discrete-time partial products; `horizon` is the number of steps.
    Walk { steps: Vec<StepSpec> },
    /// `X_t = a exp(c Y_t + d t)`, tested for the `base`-Benford property.
    Geometric {
        triple: RationalTriple,
        #[serde(default = "unit_a")]
        a: f64,
        c_over_ln_b: ExactReal,
        #[serde(default = "ExactReal::zero")]
        d_over_ln_b: ExactReal,
        #[serde(default = "ten")]
        base: u32,
    },
    /// The products `r^n`, `n = 1..=horizon`, given by `log_b r`.
    Product {
        log_b_factor: ExactReal,
        #[serde(default = "ten")]
        base: u32,
    },
    /// Time average of a trigonometric polynomial along a real Lévy path.
    Trig { triple: RationalTriple, f: TrigPolynomial },
}

impl ProcessSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProcessSpec::Levy { .. } => "levy",
            ProcessSpec::Jump { .. } => "jump",
            ProcessSpec::Walk { .. } => "walk",
            ProcessSpec::Geometric { .. } => "geometric",
            ProcessSpec::Product { .. } => "product",
            ProcessSpec::Trig { .. } => "trig",
        }
    }

    /// Processes whose natural test is the Benford test.
    pub fn is_benford(&self) -> bool {
        matches!(self, ProcessSpec::Geometric { .. } | ProcessSpec::Product { .. })
    }
}

/// What `verify` compares the occupation measure with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// The classifier's predicted limit.
    #[default]
    Predicted,
    /// Haar measure on the whole group, whatever the classifier says.
    Haar,
}

/// Pass/fail thresholds. The defaults are calibrated on pinned-seed runs at
/// `T = 10^4 .. 10^5` and are not rates from any limit theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub weyl: f64,
    pub discrepancy: f64,
    pub tv: f64,
    pub lattice_mass: f64,
    pub benford: f64,
    pub leading_digit: f64,
    pub almost_periodic: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            weyl: 0.02,
            discrepancy: 0.02,
            tv: 0.02,
            lattice_mass: 0.03,
            benford: 0.01,
            leading_digit: 0.01,
            almost_periodic: 0.05,
        }
    }
}

/// A complete experiment, serialisable as one JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "verify_kind")]
    pub experiment: ExperimentKind,
    pub group: GroupSpec,
    pub process: ProcessSpec,
    /// Time horizon `T`, or the number of steps for `walk` and `product`.
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    /// Brownian grid step (ignored without a Gaussian part).
    #[serde(default = "default_dt")]
    pub dt: f64,
    /// Checkpoints for `series.csv`; log-spaced by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<f64>>,
    /// Character truncation `K`.
    #[serde(default = "default_k")]
    pub k_max: usize,
    /// Histogram cells per torus dimension (or rotation-angle cells).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bins: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub replicas: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    #[serde(default)]
    pub target: Target,
    /// Starting point `X_0` in the group's notation (default: identity).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<serde_json::Value>,
    #[serde(default)]
    pub thresholds: Thresholds,
}

fn one() -> usize {
    1
}
fn unit_rate() -> f64 {
    1.0
}
fn unit_a() -> f64 {
    1.0
}
fn ten() -> u32 {
    10
}
fn verify_kind() -> ExperimentKind {
    ExperimentKind::Verify
}
fn default_horizon() -> f64 {
    1e4
}
fn default_dt() -> f64 {
    DEFAULT_DT
}
fn default_k() -> usize {
    5
}

/// Upper bound on the replica count of a sweep.
const MAX_REPLICAS: usize = 100_000;

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_value(value)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::Config(format!("horizon {} must be positive", self.horizon)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt {} must be positive", self.dt)));
        }
        if !(1..=64).contains(&self.k_max) {
            return Err(Error::Config(format!("k_max {} must be in 1..=64", self.k_max)));
        }
        if self.bins == Some(0) {
            return Err(Error::Config("bins must be >= 1".into()));
        }
        if !(1..=MAX_REPLICAS).contains(&self.replicas) {
            return Err(Error::Config(format!("replicas must be in 1..={MAX_REPLICAS}")));
        }
        if matches!(self.process, ProcessSpec::Walk { .. } | ProcessSpec::Product { .. })
            && (self.horizon.fract() != 0.0 || self.horizon > 1e9)
        {
            return Err(Error::Config("horizon counts steps here and must be an integer <= 1e9".into()));
        }
        if let ProcessSpec::Jump { rate, .. } = self.process {
            if !(rate > 0.0 && rate.is_finite()) {
                return Err(Error::Config(format!("rate {rate} must be positive")));
            }
        }
        let t = &self.thresholds;
        for (name, v) in [
            ("weyl", t.weyl),
            ("discrepancy", t.discrepancy),
            ("tv", t.tv),
            ("lattice_mass", t.lattice_mass),
            ("benford", t.benford),
            ("leading_digit", t.leading_digit),
            ("almost_periodic", t.almost_periodic),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("threshold {name} must be >= 0")));
            }
        }
        Ok(())
    }
}

/// Applies `key=value` overrides with dotted keys to a config document.
/// Values are parsed as JSON when possible and taken as strings otherwise,
/// so `process.triple.beta=1/2` sets the string `"1/2"`.
pub fn apply_overrides(doc: &mut serde_json::Value, overrides: &[String]) -> Result<()> {
    for item in overrides {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override {item:?} is not key=value")))?;
        if key.is_empty() {
            return Err(Error::Config(format!("override {item:?} has an empty key")));
        }
        let value = serde_json::from_str(raw).unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
        let mut node = &mut *doc;
        let parts: Vec<&str> = key.split('.').collect();
        for (i, part) in parts.iter().enumerate() {
            let last = i + 1 == parts.len();
            node = match node {
                serde_json::Value::Object(map) => {
                    if last {
                        map.insert(part.to_string(), value.clone());
                        break;
                    }
                    map.entry(part.to_string())
                        .or_insert_with(|| serde_json::Value::Object(Default::default()))
                }
                serde_json::Value::Array(items) => {
                    let idx: usize = part
                        .parse()
                        .map_err(|_| Error::Config(format!("{key}: {part:?} is not an array index")))?;
                    let len = items.len();
                    let slot = items
                        .get_mut(idx)
                        .ok_or_else(|| Error::Config(format!("{key}: index {idx} out of range ({len})")))?;
                    if last {
                        *slot = value.clone();
                        break;
                    }
                    slot
                }
                _ => return Err(Error::Config(format!("{key}: {part:?} is not inside an object"))),
            };
        }
    }
    Ok(())
}

fn exact_coords(value: &serde_json::Value, dim: usize) -> Result<Vec<ExactReal>> {
    let items: Vec<serde_json::Value> = match value {
        serde_json::Value::Array(items) => items.clone(),
        other if dim == 1 => vec![other.clone()],
        other => return Err(Error::Config(format!("torus point {other} must list {dim} coordinates"))),
    };
    if items.len() != dim {
        return Err(Error::Config(format!("torus point needs {dim} coordinates, got {}", items.len())));
    }
    items
        .into_iter()
        .map(|v| serde_json::from_value(v).map_err(Error::from))
        .collect()
}

/// Exact torus coordinates of a point given in config notation.
pub fn parse_torus_exact(group: &CompactGroup, value: &serde_json::Value) -> Result<Vec<ExactReal>> {
    let dim = group.torus_dim().ok_or_else(|| Error::FamilyMismatch {
        expected: "torus".into(),
        got: group.family_name().into(),
    })?;
    exact_coords(value, dim)
}

/// A group point written in config notation.
pub fn parse_point(group: &CompactGroup, value: &serde_json::Value) -> Result<GroupPoint> {
    match group.family() {
        GroupFamily::Torus(_) => {
            let coords: Vec<f64> = parse_torus_exact(group, value)?.iter().map(ExactReal::to_f64).collect();
            Ok(GroupPoint::torus(&coords))
        }
        GroupFamily::Finite(t) => match value {
            serde_json::Value::String(label) => t
                .index_of(label)
                .map(GroupPoint::Element)
                .ok_or_else(|| Error::Config(format!("no element labelled {label:?}"))),
            serde_json::Value::Number(n) => {
                let i = n
                    .as_u64()
                    .ok_or_else(|| Error::Config(format!("element index {n} must be a nonnegative integer")))?
                    as usize;
                t.check(i)?;
                Ok(GroupPoint::Element(i))
            }
            other => Err(Error::Config(format!("finite group element {other} must be a label or index"))),
        },
        GroupFamily::Rotation3D => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct RotationDoc {
                axis: Option<[f64; 3]>,
                angle: Option<f64>,
                quaternion: Option<[f64; 4]>,
            }
            let doc: RotationDoc = serde_json::from_value(value.clone())?;
            let q = match doc {
                RotationDoc {
                    axis: Some(axis),
                    angle: Some(angle),
                    quaternion: None,
                } => Quaternion::from_axis_angle(axis, angle)
                    .ok_or_else(|| Error::Config("rotation axis must be nonzero and finite".into()))?,
                RotationDoc {
                    axis: None,
                    angle: None,
                    quaternion: Some([w, x, y, z]),
                } => Quaternion::new(w, x, y, z)
                    .ok_or_else(|| Error::Config("quaternion must be nonzero and finite".into()))?,
                _ => return Err(Error::Config("rotation needs axis and angle, or quaternion".into())),
            };
            Ok(GroupPoint::Rotation(q))
        }
    }
}

/// The step distribution of a walk; missing probabilities mean uniform.
pub fn parse_steps(group: &CompactGroup, steps: &[StepSpec]) -> Result<StepDistribution> {
    if steps.is_empty() {
        return Err(Error::InvalidSteps("no steps".into()));
    }
    let points = steps
        .iter()
        .map(|s| parse_point(group, &s.point))
        .collect::<Result<Vec<_>>>()?;
    match (steps.iter().all(|s| s.prob.is_none()), steps.iter().all(|s| s.prob.is_some())) {
        (true, _) => StepDistribution::uniform(group, points),
        (_, true) => StepDistribution::new(
            group,
            points.into_iter().zip(steps.iter().map(|s| s.prob.unwrap_or(0.0))).collect(),
        ),
        _ => Err(Error::InvalidSteps("give a probability for every step or for none".into())),
    }
}
