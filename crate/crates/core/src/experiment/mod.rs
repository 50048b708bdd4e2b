//! Experiment runner: builds the group and process from an
//! [`ExperimentConfig`], classifies, simulates, runs the tests that fit the
//! verdict and writes the output files.
//!
//! Output files (all optional, written only when an output directory is
//! set): `report.json`, `occupation.csv`, `series.csv`, `discrepancy.csv`
//! (Haar verdicts on a torus), `benford.csv` (Benford processes) and
//! `path.csv` (on request). Nothing in them depends on wall-clock time or
//! thread count, so identical configs give identical bytes.

mod config;
pub mod output;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use config::{
    apply_overrides, parse_point, parse_steps, parse_torus_exact, ExperimentConfig, ExperimentKind, GroupSpec,
    ProcessSpec, StepSpec, Target, Thresholds,
};

use crate::almost_periodic::{average_status, mean_value, path_average, AverageStatus, TrigPolynomial};
use crate::classifier::{
    classify_benford, classify_iid_finite, classify_iid_torus, classify_torus_triple, predicted_limit_measure,
    BenfordInput, Verdict, VerdictKind,
};
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::group::{frac, CompactGroup, GroupFamily, GroupPoint};
use crate::levy::{
    log_significand, partial_products, simulate_jump_levy_group, simulate_real_levy, simulate_real_levy_from,
    write_jump_csv, write_torus_path_csv, JumpPath, RationalTriple, StepDistribution, TorusLevyPath,
};
use crate::occupation::{
    character_series, interval_mass, log_checkpoints, marginal_circle_measure, occupation_histogram,
    CharacterSeries, OccupationMeasure, Partition,
};
use crate::path::{SamplePath, Segment};
use crate::rng::replica_seed;
use crate::uniformity::{
    benford_statistic_occupation, round12, star_discrepancy_measure, tv_to_target, weyl_statistic, TestReport,
    BENFORD_GRID,
};

/// Where and what to write besides the returned report.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `out_dir` of the config.
    pub out_dir: Option<PathBuf>,
    /// Also write `path.csv`.
    pub emit_path: bool,
    /// Replica parallelism of sweeps (`None`: rayon's default).
    pub threads: Option<usize>,
}

/// Result of one run: the `report.json` document and its tests.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report: Value,
    pub tests: Vec<TestReport>,
    pub pass: bool,
}

impl RunOutcome {
    /// 0 when every test passed, 1 on a statistical failure.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Runs the experiment named in the config.
pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    match config.experiment {
        ExperimentKind::Classify => run_classify(config, opts),
        ExperimentKind::Simulate => run_simulate(config, opts),
        ExperimentKind::Verify => run_verify(config, opts),
        ExperimentKind::Benford => run_benford(config, opts),
        ExperimentKind::Sweep => run_sweep(config, opts),
    }
}

fn out_dir(config: &ExperimentConfig, opts: &RunOptions) -> Result<Option<PathBuf>> {
    let dir = opts.out_dir.clone().or_else(|| config.out_dir.as_ref().map(PathBuf::from));
    if let Some(d) = &dir {
        std::fs::create_dir_all(d).map_err(|e| Error::Io(format!("cannot create {}: {e}", d.display())))?;
    }
    Ok(dir)
}

fn number(x: f64) -> Value {
    json!(round12(x))
}

fn complex(z: Complex64) -> Value {
    json!([round12(z.re), round12(z.im)])
}

// ---------------------------------------------------------------------------
// Setup

struct Setup {
    group: CompactGroup,
    initial: GroupPoint,
    /// Whether `initial` came from the config.
    explicit_initial: bool,
}

fn setup(config: &ExperimentConfig) -> Result<Setup> {
    let group = config.group.build()?;
    let needs_circle = matches!(
        config.process,
        ProcessSpec::Levy { .. } | ProcessSpec::Trig { .. } | ProcessSpec::Geometric { .. } | ProcessSpec::Product { .. }
    );
    if needs_circle && group.torus_dim() != Some(1) {
        return Err(Error::Config(format!(
            "process {} lives on the circle; use group {{\"kind\": \"torus\", \"dim\": 1}}",
            config.process.name()
        )));
    }
    let (initial, explicit_initial) = match &config.initial {
        Some(v) => {
            if config.process.is_benford() {
                return Err(Error::Config(format!(
                    "initial is not used by {} processes",
                    config.process.name()
                )));
            }
            (parse_point(&group, v)?, true)
        }
        None => (group.identity(), false),
    };
    Ok(Setup {
        group,
        initial,
        explicit_initial,
    })
}

fn benford_input(config: &ExperimentConfig) -> Option<BenfordInput> {
    match &config.process {
        ProcessSpec::Geometric {
            triple,
            c_over_ln_b,
            d_over_ln_b,
            base,
            ..
        } => Some(BenfordInput {
            triple: triple.clone(),
            c_over_ln_b: c_over_ln_b.clone(),
            d_over_ln_b: d_over_ln_b.clone(),
            base: *base,
        }),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Classification

/// The classifier's answer for a config.
struct Classification {
    verdict: Verdict,
    /// Benford processes: whether `X` is predicted to be Benford, and the
    /// triple of the companion path.
    benford: Option<(bool, Option<RationalTriple>)>,
    /// Trigonometric averages: the convergence status.
    status: Option<AverageStatus>,
}

fn classify(config: &ExperimentConfig, setup: &Setup) -> Result<Classification> {
    let plain = |verdict| Classification {
        verdict,
        benford: None,
        status: None,
    };
    match &config.process {
        ProcessSpec::Levy { triple } => Ok(plain(classify_torus_triple(triple)?)),
        ProcessSpec::Trig { triple, .. } => Ok(Classification {
            status: Some(average_status(triple)?),
            ..plain(classify_torus_triple(triple)?)
        }),
        ProcessSpec::Jump { steps, .. } | ProcessSpec::Walk { steps } => {
            let dist = parse_steps(&setup.group, steps)?;
            let support: Vec<&GroupPoint> = dist
                .support()
                .iter()
                .zip(dist.probabilities())
                .filter(|(_, p)| **p > 0.0)
                .map(|(g, _)| g)
                .collect();
            match setup.group.family() {
                GroupFamily::Finite(t) => {
                    let idx: Vec<usize> = support
                        .iter()
                        .map(|g| match g {
                            GroupPoint::Element(i) => *i,
                            _ => unreachable!("parsed as finite elements"),
                        })
                        .collect();
                    Ok(plain(classify_iid_finite(t, &idx)?))
                }
                GroupFamily::Torus(t) => {
                    let exact: Vec<Vec<ExactReal>> = steps
                        .iter()
                        .filter(|s| s.prob.is_none_or(|p| p > 0.0))
                        .map(|s| parse_torus_exact(&setup.group, &s.point))
                        .collect::<Result<_>>()?;
                    Ok(plain(classify_iid_torus(t.dim, &exact)?))
                }
                GroupFamily::Rotation3D => Err(Error::Undecidable(
                    "the closed subgroup generated by rotations is not computed; use target \"haar\"".into(),
                )),
            }
        }
        ProcessSpec::Geometric { .. } | ProcessSpec::Product { .. } => {
            if let ProcessSpec::Product { log_b_factor, .. } = &config.process {
                // <n log_b r> is the walk on T with the single step log_b r
                let verdict = classify_iid_torus(1, &[vec![log_b_factor.clone()]])?;
                return Ok(Classification {
                    benford: Some((verdict.is_haar(), None)),
                    verdict,
                    status: None,
                });
            }
            let b = classify_benford(&benford_input(config).expect("geometric process"))?;
            Ok(Classification {
                benford: Some((b.benford, Some(b.transformed))),
                verdict: b.torus,
                status: None,
            })
        }
    }
}

/// Starting point of the companion circle path of a Benford process.
fn benford_translate(config: &ExperimentConfig) -> Option<GroupPoint> {
    match &config.process {
        ProcessSpec::Geometric { a, base, .. } => Some(GroupPoint::circle(log_significand(*a, *base))),
        _ => None,
    }
}

fn translate_for(config: &ExperimentConfig, setup: &Setup) -> Option<GroupPoint> {
    benford_translate(config).or_else(|| setup.explicit_initial.then(|| setup.initial.clone()))
}

// ---------------------------------------------------------------------------
// Partitions

fn default_bins(group: &CompactGroup) -> usize {
    match group.torus_dim() {
        Some(1) | None => 1000,
        Some(2) => 100,
        Some(_) => 10,
    }
}

/// Cells for the occupation histogram. Finite verdicts on a torus get a
/// partition centred on the lattice `(1/m) Z^d`, with the default bin count
/// rounded up to a multiple of `m`.
fn choose_partition(config: &ExperimentConfig, group: &CompactGroup, verdict: Option<&Verdict>) -> Result<Partition> {
    let Some(dim) = group.torus_dim() else {
        return Partition::for_group(group, config.bins.unwrap_or(default_bins(group)));
    };
    if config.process.is_benford() && verdict.is_none_or(Verdict::is_haar) {
        return Partition::for_group(group, BENFORD_GRID);
    }
    let lattice = match verdict.map(|v| &v.kind) {
        Some(VerdictKind::UniformOnLattice { m }) | Some(VerdictKind::UniformOnTorusSubgroup { m, .. }) => Some(*m),
        Some(VerdictKind::PointMass { .. }) => Some(1),
        _ => None,
    };
    match lattice {
        None => Partition::for_group(group, config.bins.unwrap_or(default_bins(group))),
        Some(m) => {
            let bins = match config.bins {
                Some(b) => b,
                None => {
                    let m = usize::try_from(m).map_err(|_| Error::InvalidParameter("lattice too fine".into()))?;
                    default_bins(group).div_ceil(m) * m
                }
            };
            Partition::centered_torus(dim, bins)
        }
    }
}

/// Indices of the cells carrying predicted mass.
fn support_cells(limit: &[f64]) -> Vec<usize> {
    limit.iter().enumerate().filter(|(_, m)| **m > 0.0).map(|(i, _)| i).collect()
}

// ---------------------------------------------------------------------------
// Simulation

enum Simulated {
    Torus(TorusLevyPath),
    Jump(JumpPath),
}

impl Simulated {
    fn path(&self) -> &dyn SamplePath {
        match self {
            Simulated::Torus(p) => p,
            Simulated::Jump(p) => p,
        }
    }

    fn jump_count(&self) -> usize {
        match self {
            Simulated::Torus(p) => p.base().jump_count(),
            Simulated::Jump(p) => p.jump_count(),
        }
    }

    fn write_csv<W: Write>(&self, out: &mut W, seed: u64) -> Result<()> {
        match self {
            Simulated::Torus(p) => write_torus_path_csv(out, p),
            Simulated::Jump(p) => write_jump_csv(out, p, seed),
        }
    }
}

fn step_count(horizon: f64) -> usize {
    horizon as usize
}

fn simulate(config: &ExperimentConfig, setup: &Setup, seed: u64) -> Result<Simulated> {
    let t = config.horizon;
    let group = &setup.group;
    match &config.process {
        ProcessSpec::Levy { triple } | ProcessSpec::Trig { triple, .. } => {
            let x0 = setup.initial.as_circle().unwrap_or(0.0);
            let path = simulate_real_levy_from(&triple.to_float()?, t, config.dt, seed, x0)?;
            Ok(Simulated::Torus(TorusLevyPath::affine(path, 0.0, 1.0, 0.0)))
        }
        ProcessSpec::Jump { steps, rate } => {
            let dist = parse_steps(group, steps)?;
            Ok(Simulated::Jump(simulate_jump_levy_group(
                group,
                &dist,
                *rate,
                t,
                seed,
                &setup.initial,
            )?))
        }
        ProcessSpec::Walk { steps } => {
            let dist: StepDistribution = parse_steps(group, steps)?;
            let seq = partial_products(group, &dist, step_count(t), seed, &setup.initial)?;
            Ok(Simulated::Jump(JumpPath::from_sequence(group.clone(), seq)?))
        }
        ProcessSpec::Geometric {
            triple,
            a,
            c_over_ln_b,
            d_over_ln_b,
            base,
        } => {
            let path = simulate_real_levy(&triple.to_float()?, t, config.dt, seed)?;
            let ln_b = f64::from(*base).ln();
            let geo = crate::levy::geometric_transform(
                path,
                *a,
                c_over_ln_b.to_f64() * ln_b,
                d_over_ln_b.to_f64() * ln_b,
            )?;
            Ok(Simulated::Torus(geo.log_torus(*base)?))
        }
        ProcessSpec::Product { log_b_factor, .. } => {
            let n = step_count(t);
            let seq: Vec<GroupPoint> = match log_b_factor.as_rational() {
                Some(q) => {
                    // exact residues n p mod q
                    use num_integer::Integer;
                    use num_traits::ToPrimitive;
                    let (p, d) = (q.numer().clone(), q.denom().clone());
                    let step = p.mod_floor(&d);
                    let mut r = num_bigint::BigInt::from(0);
                    let df = d.to_f64().unwrap_or(f64::INFINITY);
                    (0..n)
                        .map(|_| {
                            r = (&r + &step).mod_floor(&d);
                            GroupPoint::circle(r.to_f64().unwrap_or(0.0) / df)
                        })
                        .collect()
                }
                None => {
                    let l = log_b_factor.to_f64();
                    (1..=n).map(|k| GroupPoint::circle(frac(k as f64 * l))).collect()
                }
            };
            Ok(Simulated::Jump(JumpPath::from_sequence(group.clone(), seq)?))
        }
    }
}

fn checkpoints(config: &ExperimentConfig, horizon: f64) -> Vec<f64> {
    match &config.checkpoints {
        Some(c) => c.clone(),
        None => log_checkpoints(horizon, horizon / 1e4, 4),
    }
}

// ---------------------------------------------------------------------------
// Prefix view of a path, for statistics at intermediate horizons

struct Prefix<'a> {
    path: &'a dyn SamplePath,
    horizon: f64,
}

impl SamplePath for Prefix<'_> {
    fn group(&self) -> &CompactGroup {
        self.path.group()
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn is_exact(&self) -> bool {
        self.path.is_exact()
    }

    fn for_each_segment(&self, f: &mut dyn FnMut(&Segment)) {
        let h = self.horizon;
        self.path.for_each_segment(&mut |seg| {
            if seg.start >= h {
                return;
            }
            if seg.start + seg.duration <= h {
                f(seg);
            } else {
                f(&seg.truncated(h - seg.start));
            }
        });
    }
}

/// Largest per-coordinate star discrepancy of the occupation measure.
fn max_discrepancy(path: &dyn SamplePath, dim: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for c in 0..dim {
        worst = worst.max(star_discrepancy_measure(&marginal_circle_measure(path, c)?)?);
    }
    Ok(worst)
}

/// `(T, discrepancy)` at decade checkpoints.
fn discrepancy_decay(path: &dyn SamplePath, dim: usize) -> Result<Vec<(f64, f64)>> {
    let horizon = path.horizon();
    let mut out = Vec::new();
    for t in log_checkpoints(horizon, horizon / 1e4, 1) {
        let d = if t == horizon {
            max_discrepancy(path, dim)?
        } else {
            max_discrepancy(&Prefix { path, horizon: t }, dim)?
        };
        out.push((t, d));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Shared pieces of verify / simulate

struct Evaluated {
    sim: Simulated,
    partition: Partition,
    occupation: OccupationMeasure,
    series: Vec<CharacterSeries>,
    series_labels: Option<Vec<String>>,
    discrepancy: Option<Vec<(f64, f64)>>,
    benford_cdf: Option<Vec<f64>>,
}

fn evaluate(
    config: &ExperimentConfig,
    setup: &Setup,
    seed: u64,
    partition: Partition,
    with_discrepancy: bool,
) -> Result<Evaluated> {
    let sim = simulate(config, setup, seed)?;
    let path = sim.path();
    let horizon = path.horizon();
    let occupation = occupation_histogram(path, &partition)?;
    let cps = checkpoints(config, horizon);
    let (series, series_labels) = match &config.process {
        ProcessSpec::Trig { f, .. } => {
            let Simulated::Torus(p) = &sim else {
                unreachable!("trig paths are torus paths")
            };
            trig_series(f, p, &cps)?
        }
        _ => (character_series(path, &setup.group.test_characters(config.k_max), &cps)?, None),
    };
    let discrepancy = match (with_discrepancy, setup.group.torus_dim()) {
        (true, Some(d)) => Some(discrepancy_decay(path, d)?),
        _ => None,
    };
    let benford_cdf = if config.process.is_benford() {
        let std = standard_benford_occupation(path, &occupation)?;
        let mut f = 0.0;
        Some(
            std.masses
                .iter()
                .map(|m| {
                    f += m;
                    f
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(Evaluated {
        sim,
        partition,
        occupation,
        series,
        series_labels,
        discrepancy,
        benford_cdf,
    })
}

/// The 1000-cell, offset-0 histogram the Benford statistic is read from.
fn standard_benford_occupation(path: &dyn SamplePath, occ: &OccupationMeasure) -> Result<OccupationMeasure> {
    let standard = Partition::Torus {
        dim: 1,
        bins: BENFORD_GRID,
        offset: 0.0,
    };
    if occ.partition == standard {
        Ok(occ.clone())
    } else {
        occupation_histogram(path, &standard)
    }
}

/// Running averages of each term `e^{i lambda y}` of `f`.
fn trig_series(
    f: &TrigPolynomial,
    path: &TorusLevyPath,
    cps: &[f64],
) -> Result<(Vec<CharacterSeries>, Option<Vec<String>>)> {
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for t in f.terms() {
        let lifted = TorusLevyPath::affine(path.base().clone(), 0.0, t.lambda / (2.0 * std::f64::consts::PI), 0.0);
        let s = character_series(&lifted, &[crate::group::CharacterIndex::circle(1)], cps)?;
        series.extend(s);
        labels.push(format!("lambda={}", t.lambda));
    }
    Ok((series, Some(labels)))
}

fn write_outputs(
    dir: &Path,
    config: &ExperimentConfig,
    group: &CompactGroup,
    ev: &Evaluated,
    seed: u64,
    emit_path: bool,
) -> Result<()> {
    let horizon = ev.occupation.total_time;
    output::save_occupation(&dir.join("occupation.csv"), &ev.occupation, group, seed)?;
    output::save_series(
        &dir.join("series.csv"),
        &ev.series,
        ev.series_labels.as_deref(),
        seed,
        horizon,
    )?;
    if let Some(d) = &ev.discrepancy {
        output::save_with(&dir.join("discrepancy.csv"), |f| {
            writeln!(f, "# seed={seed} horizon={horizon:.9}")?;
            writeln!(f, "T,discrepancy")?;
            for (t, v) in d {
                writeln!(f, "{t:.11e},{v:.11e}")?;
            }
            Ok(())
        })?;
    }
    if let (Some(cdf), Some(base)) = (&ev.benford_cdf, benford_base(config)) {
        output::save_with(&dir.join("benford.csv"), |f| {
            writeln!(f, "# seed={seed} horizon={horizon:.9} base={base}")?;
            writeln!(f, "s,empirical_cdf,log_law")?;
            let b = f64::from(base);
            for (i, v) in cdf.iter().enumerate() {
                let u = (i + 1) as f64 / BENFORD_GRID as f64;
                let s = if i + 1 == BENFORD_GRID { b } else { b.powf(u) };
                writeln!(f, "{s:.11e},{v:.11e},{u:.11e}")?;
            }
            Ok(())
        })?;
    }
    if emit_path {
        output::save_with(&dir.join("path.csv"), |f| ev.sim.write_csv(f, seed))?;
    }
    Ok(())
}

fn benford_base(config: &ExperimentConfig) -> Option<u32> {
    match &config.process {
        ProcessSpec::Geometric { base, .. } | ProcessSpec::Product { base, .. } => Some(*base),
        _ => None,
    }
}

fn report_head(config: &ExperimentConfig, kind: &str, seed: u64) -> Result<serde_json::Map<String, Value>> {
    let mut doc = serde_json::Map::new();
    doc.insert("experiment".into(), kind.into());
    doc.insert("seed".into(), seed.into());
    doc.insert("T".into(), number(config.horizon));
    doc.insert("group".into(), serde_json::to_value(&config.group)?);
    doc.insert("process".into(), serde_json::to_value(&config.process)?);
    Ok(doc)
}

fn verdict_json(
    class: &Classification,
    group: &CompactGroup,
    partition: &Partition,
    translate: Option<&GroupPoint>,
) -> Result<Value> {
    let mut v = class.verdict.to_json(group, partition, translate)?;
    if let Value::Object(map) = &mut v {
        if let Some((benford, transformed)) = &class.benford {
            map.insert("benford".into(), (*benford).into());
            if let Some(t) = transformed {
                map.insert("transformed_triple".into(), serde_json::to_value(t)?);
            }
        }
        if let Some(s) = class.status {
            map.insert("average_status".into(), serde_json::to_value(s)?);
            map.insert("average_note".into(), s.describe().into());
        }
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Commands

/// Classifies the process and writes the verdict to `report.json`.
pub fn run_classify(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    let setup = setup(config)?;
    let class = classify(config, &setup)?;
    let partition = choose_partition(config, &setup.group, Some(&class.verdict))?;
    let translate = translate_for(config, &setup);
    let mut doc = report_head(config, "classify", config.seed)?;
    doc.insert("partition".into(), serde_json::to_value(&partition)?);
    doc.insert(
        "verdict".into(),
        verdict_json(&class, &setup.group, &partition, translate.as_ref())?,
    );
    doc.insert("tests".into(), json!([]));
    doc.insert("pass".into(), true.into());
    let report = Value::Object(doc);
    if let Some(dir) = out_dir(config, opts)? {
        output::save_json(&dir.join("report.json"), &report)?;
    }
    Ok(RunOutcome {
        report,
        tests: vec![],
        pass: true,
    })
}

/// Simulates and writes the occupation measure, character series and a
/// summary; runs no tests.
pub fn run_simulate(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    let setup = setup(config)?;
    let verdict = classify(config, &setup).ok();
    let partition = choose_partition(config, &setup.group, verdict.as_ref().map(|c| &c.verdict))?;
    let ev = evaluate(config, &setup, config.seed, partition, false)?;
    let mut doc = report_head(config, "simulate", config.seed)?;
    doc.insert("partition".into(), serde_json::to_value(&ev.partition)?);
    doc.insert(
        "summary".into(),
        json!({
            "jumps": ev.sim.jump_count(),
            "occupation_total": round12(ev.occupation.total_mass()),
            "exact": ev.sim.path().is_exact(),
        }),
    );
    doc.insert("tests".into(), json!([]));
    doc.insert("pass".into(), true.into());
    let report = Value::Object(doc);
    if let Some(dir) = out_dir(config, opts)? {
        write_outputs(&dir, config, &setup.group, &ev, config.seed, opts.emit_path)?;
        output::save_json(&dir.join("report.json"), &report)?;
    }
    Ok(RunOutcome {
        report,
        tests: vec![],
        pass: true,
    })
}

/// Simulates, runs the tests that fit the verdict (or Haar, with target
/// `haar`) and writes all outputs. `pass` is the conjunction of the tests.
pub fn run_verify(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    verify_with_seed(config, config.seed, out_dir(config, opts)?.as_deref(), opts.emit_path, "verify")
}

/// [`run_verify`] restricted to Benford processes.
pub fn run_benford(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    if !config.process.is_benford() {
        return Err(Error::Config(format!(
            "benford needs a geometric or product process, not {}",
            config.process.name()
        )));
    }
    verify_with_seed(config, config.seed, out_dir(config, opts)?.as_deref(), opts.emit_path, "benford")
}

fn verify_with_seed(
    config: &ExperimentConfig,
    seed: u64,
    dir: Option<&Path>,
    emit_path: bool,
    kind: &str,
) -> Result<RunOutcome> {
    let setup = setup(config)?;
    let class = match classify(config, &setup) {
        Ok(c) => Some(c),
        Err(Error::Undecidable(_)) if config.target == Target::Haar => None,
        Err(e) => return Err(e),
    };
    let verdict = class.as_ref().map(|c| &c.verdict);
    let haar_tests = config.target == Target::Haar || verdict.is_none_or(Verdict::is_haar);
    let partition = choose_partition(config, &setup.group, verdict)?;
    let translate = translate_for(config, &setup);
    let limit = match verdict {
        Some(v) if !haar_tests => Some(predicted_limit_measure(
            &v.kind,
            &setup.group,
            &partition,
            translate.as_ref(),
        )?),
        _ => None,
    };

    let torus_haar = haar_tests && setup.group.torus_dim().is_some() && !config.process.is_benford();
    let ev = evaluate(config, &setup, seed, partition, torus_haar)?;
    let thr = &config.thresholds;
    let horizon = ev.occupation.total_time;
    let mut tests = Vec::new();

    if config.process.is_benford() {
        tests.extend(benford_tests(config, &ev, class.as_ref())?);
    } else if let ProcessSpec::Trig { f, .. } = &config.process {
        let Simulated::Torus(p) = &ev.sim else {
            unreachable!("trig paths are torus paths")
        };
        let status = class.as_ref().and_then(|c| c.status);
        if config.target == Target::Haar || status == Some(AverageStatus::ConvergesToMean) {
            let avg = path_average(f, p.base(), p.base().horizon())?;
            let mean = mean_value(f);
            tests.push(
                TestReport::at_most("almost_periodic", (avg - mean).norm(), thr.almost_periodic)
                    .with_param("average", complex(avg))
                    .with_param("mean_value", complex(mean)),
            );
        }
    } else if haar_tests {
        match setup.group.family() {
            GroupFamily::Torus(t) => {
                tests.push(
                    TestReport::at_most("weyl", weyl_statistic(&setup.group, &ev.series, config.k_max)?, thr.weyl)
                        .with_param("K", config.k_max),
                );
                tests.push(
                    TestReport::at_most("discrepancy", max_discrepancy(ev.sim.path(), t.dim)?, thr.discrepancy)
                        .with_param("coordinates", t.dim),
                );
            }
            GroupFamily::Finite(_) => {
                let haar = ev.partition.haar_masses();
                tests.push(TestReport::at_most("tv", tv_to_target(&ev.occupation, &haar)?, thr.tv).with_param("target", "haar"));
            }
            GroupFamily::Rotation3D => {
                tests.push(
                    TestReport::at_most("weyl", weyl_statistic(&setup.group, &ev.series, config.k_max)?, thr.weyl)
                        .with_param("K", config.k_max.min(3)),
                );
            }
        }
    } else {
        let limit = limit.as_ref().expect("computed for non-Haar verdicts");
        match setup.group.family() {
            GroupFamily::Finite(_) => {
                tests.push(
                    TestReport::at_most("tv", tv_to_target(&ev.occupation, limit)?, thr.tv)
                        .with_param("target", "predicted"),
                );
            }
            _ => {
                let support = support_cells(limit);
                tests.push(
                    TestReport::at_most("support", ev.occupation.mass_outside(&support), 0.0)
                        .with_param("cells", support.len()),
                );
                let worst = support
                    .iter()
                    .map(|&i| (ev.occupation.masses[i] - limit[i]).abs())
                    .fold(0.0, f64::max);
                tests.push(
                    TestReport::at_most("point_mass", worst, thr.lattice_mass)
                        .with_param("expected", round12(limit[support[0]])),
                );
            }
        }
    }
    let tests: Vec<TestReport> = tests.into_iter().map(|t| t.with_run(seed, horizon)).collect();
    let pass = tests.iter().all(|t| t.pass);

    let mut doc = report_head(config, kind, seed)?;
    doc.insert("partition".into(), serde_json::to_value(&ev.partition)?);
    let verdict_doc = match &class {
        Some(c) => verdict_json(c, &setup.group, &ev.partition, translate.as_ref())?,
        None => Value::Null,
    };
    doc.insert("verdict".into(), verdict_doc);
    doc.insert("target".into(), serde_json::to_value(config.target)?);
    doc.insert("tests".into(), serde_json::to_value(&tests)?);
    doc.insert("pass".into(), pass.into());
    let report = Value::Object(doc);
    if let Some(dir) = dir {
        write_outputs(dir, config, &setup.group, &ev, seed, emit_path)?;
        output::save_json(&dir.join("report.json"), &report)?;
    }
    Ok(RunOutcome { report, tests, pass })
}

/// Benford statistic and leading-digit frequency of the companion path.
/// A non-Benford prediction turns the statistic into a lower-bound test.
fn benford_tests(config: &ExperimentConfig, ev: &Evaluated, class: Option<&Classification>) -> Result<Vec<TestReport>> {
    let base = benford_base(config).expect("benford process");
    let thr = &config.thresholds;
    let path = ev.sim.path();
    let std = standard_benford_occupation(path, &ev.occupation)?;
    let summary = benford_statistic_occupation(&std, base)?;
    let log_two = 2f64.ln() / f64::from(base).ln();
    let leading = interval_mass(path, 0.0, log_two)?;
    let predicted = config.target == Target::Haar || class.and_then(|c| c.benford.as_ref()).is_none_or(|b| b.0);
    let mut tests = Vec::new();
    if predicted {
        tests.push(TestReport::at_most("benford", summary.statistic, thr.benford).with_param("base", base));
        tests.push(
            TestReport::at_most("leading_digit", (leading - log_two).abs(), thr.leading_digit)
                .with_param("frequency", round12(leading))
                .with_param("expected", round12(log_two)),
        );
    } else {
        tests.push(
            TestReport::at_least("benford", summary.statistic, thr.benford)
                .with_param("base", base)
                .with_param("predicted", "not benford"),
        );
    }
    Ok(tests)
}

/// Runs `replicas` verify runs with seeds `seed + i` in parallel and
/// aggregates their statistics. Replica `i` writes to `replica_<i>`.
pub fn run_sweep(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    let dir = out_dir(config, opts)?;
    let run_one = |i: usize| -> Result<RunOutcome> {
        let seed = replica_seed(config.seed, i as u64);
        let sub = match &dir {
            Some(d) => {
                let p = d.join(format!("replica_{i:03}"));
                std::fs::create_dir_all(&p)?;
                Some(p)
            }
            None => None,
        };
        verify_with_seed(config, seed, sub.as_deref(), opts.emit_path, "verify")
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker threads: {e}")))?;
    let outcomes: Vec<Result<RunOutcome>> = pool.install(|| (0..config.replicas).into_par_iter().map(run_one).collect());
    let outcomes: Vec<RunOutcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let mut groups: BTreeMap<String, Vec<&TestReport>> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for o in &outcomes {
        for t in &o.tests {
            if !groups.contains_key(&t.test) {
                order.push(t.test.clone());
            }
            groups.entry(t.test.clone()).or_default().push(t);
        }
    }
    let aggregate: Vec<Value> = order
        .iter()
        .map(|name| {
            let ts = &groups[name];
            let stats: Vec<f64> = ts.iter().map(|t| t.statistic).collect();
            let mean = stats.iter().sum::<f64>() / stats.len() as f64;
            let max = stats.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = stats.iter().copied().fold(f64::INFINITY, f64::min);
            json!({
                "test": name,
                "mean": round12(mean),
                "max": round12(max),
                "min": round12(min),
                "threshold": round12(ts[0].threshold),
                "comparison": ts[0].comparison,
                "passes": ts.iter().filter(|t| t.pass).count(),
                "replicas": ts.len(),
            })
        })
        .collect();
    let pass = outcomes.iter().all(|o| o.pass);
    let mut doc = report_head(config, "sweep", config.seed)?;
    doc.insert("replicas".into(), config.replicas.into());
    doc.insert(
        "replica_seeds".into(),
        json!((0..config.replicas).map(|i| replica_seed(config.seed, i as u64)).collect::<Vec<_>>()),
    );
    doc.insert(
        "replica_pass".into(),
        json!(outcomes.iter().map(|o| o.pass).collect::<Vec<_>>()),
    );
    doc.insert("aggregate".into(), Value::Array(aggregate));
    doc.insert("pass".into(), pass.into());
    let report = Value::Object(doc);
    if let Some(d) = &dir {
        output::save_json(&d.join("report.json"), &report)?;
    }
    let tests = outcomes.into_iter().flat_map(|o| o.tests).collect();
    Ok(RunOutcome { report, tests, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_json(text).unwrap()
    }

    const LATTICE: &str = r#"{
        "group": {"kind": "torus"},
        "process": {"kind": "levy", "triple": {"beta": "1/2", "sigma2": "0", "nu": [{"x": "1/2", "mass": "1"}]}},
        "horizon": 1000,
        "seed": 7
    }"#;

    #[test]
    fn lattice_verify_passes_and_haar_target_fails() {
        let c = config(LATTICE);
        let out = run_verify(&c, &RunOptions::default()).unwrap();
        assert!(out.pass, "{:#}", out.report);
        assert_eq!(out.report["verdict"]["kind"], "UniformOnLattice");
        let mut haar = c.clone();
        haar.target = Target::Haar;
        let out = run_verify(&haar, &RunOptions::default()).unwrap();
        assert!(!out.pass);
        assert_eq!(out.exit_code(), 1);
    }

    #[test]
    fn classify_finite_subgroup() {
        let c = config(
            r#"{"experiment": "classify", "group": {"kind": "finite", "builtin": "Z6"},
                "process": {"kind": "walk", "steps": [{"point": 2}]}, "horizon": 10}"#,
        );
        let out = run_classify(&c, &RunOptions::default()).unwrap();
        assert_eq!(out.report["verdict"]["kind"], "UniformOnSubgroup");
        assert_eq!(out.report["verdict"]["subgroup"], json!([0, 2, 4]));
    }

    #[test]
    fn rotation_needs_haar_target() {
        let text = r#"{"group": {"kind": "rotation3d"},
            "process": {"kind": "walk", "steps": [{"point": {"axis": [0, 0, 1], "angle": 1}},
                                                 {"point": {"axis": [1, 0, 0], "angle": 1}}]},
            "horizon": 2000}"#;
        assert!(matches!(run_verify(&config(text), &RunOptions::default()), Err(Error::Undecidable(_))));
        let mut c = config(text);
        c.target = Target::Haar;
        c.thresholds.weyl = 0.2;
        let out = run_verify(&c, &RunOptions::default()).unwrap();
        assert_eq!(out.report["verdict"], Value::Null);
        assert_eq!(out.tests[0].test, "weyl");
    }

    #[test]
    fn sweep_of_one_matches_verify() {
        let c = config(LATTICE);
        let v = run_verify(&c, &RunOptions::default()).unwrap();
        let s = run_sweep(&c, &RunOptions::default()).unwrap();
        assert_eq!(v.tests, s.tests);
    }

    #[test]
    fn prefix_truncates() {
        let path = JumpPath::from_sequence(
            CompactGroup::circle(),
            vec![GroupPoint::circle(0.0), GroupPoint::circle(0.5)],
        )
        .unwrap();
        let p = Prefix {
            path: &path,
            horizon: 1.5,
        };
        let occ = occupation_histogram(&p, &Partition::for_group(&CompactGroup::circle(), 2).unwrap()).unwrap();
        assert_eq!(occ.masses, vec![1.0 / 1.5, 0.5 / 1.5]);
    }
}
