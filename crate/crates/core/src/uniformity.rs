//! Uniformity statistics: Weyl (character) sums, one-dimensional star
//! discrepancy, total variation to a target measure, and Benford tests on
//! significands.
//!
//! Verdicts at finite horizon are threshold based. The thresholds are
//! empirical calibrations (see the acceptance suite), not rates implied by
//! any limit theorem. On `T^d` with `d > 1` only per-coordinate
//! discrepancies are computed; exact multidimensional star discrepancy is
//! NP-hard, and the character statistic covers the joint behaviour.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CharacterIndex, CompactGroup};
use crate::occupation::{CharacterSeries, CircleMeasure, OccupationMeasure, Partition};

/// Number of points `s = b^{i/1000}` on which Benford CDFs are compared.
pub const BENFORD_GRID: usize = 1000;

/// Rounds to 12 significant digits, the precision used in every report.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Direction of a threshold comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    /// pass iff `statistic <= threshold`
    #[serde(rename = "<=")]
    AtMost,
    /// pass iff `statistic >= threshold` (negative controls)
    #[serde(rename = ">=")]
    AtLeast,
}

/// Outcome of one statistical test.
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub test: String,
    pub statistic: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
    pub horizon: Option<f64>,
}

impl TestReport {
    pub fn at_most(test: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        TestReport {
            test: test.into(),
            statistic,
            threshold,
            comparison: Comparison::AtMost,
            pass: statistic <= threshold,
            params: BTreeMap::new(),
            seed: None,
            horizon: None,
        }
    }

    pub fn at_least(test: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        TestReport {
            comparison: Comparison::AtLeast,
            pass: statistic >= threshold,
            ..TestReport::at_most(test, statistic, threshold)
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_run(mut self, seed: u64, horizon: f64) -> Self {
        self.seed = Some(seed);
        self.horizon = Some(horizon);
        self
    }
}

#[derive(Serialize, Deserialize)]
struct TestReportJson {
    test: String,
    statistic: f64,
    threshold: f64,
    comparison: Comparison,
    verdict: String,
    params: BTreeMap<String, serde_json::Value>,
    seed: Option<u64>,
    #[serde(rename = "T")]
    horizon: Option<f64>,
}

impl Serialize for TestReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TestReportJson {
            test: self.test.clone(),
            statistic: round12(self.statistic),
            threshold: round12(self.threshold),
            comparison: self.comparison,
            verdict: if self.pass { "pass" } else { "fail" }.into(),
            params: self.params.clone(),
            seed: self.seed,
            horizon: self.horizon.map(round12),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TestReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TestReportJson::deserialize(d)?;
        Ok(TestReport {
            test: j.test,
            statistic: j.statistic,
            threshold: j.threshold,
            comparison: j.comparison,
            pass: j.verdict == "pass",
            params: j.params,
            seed: j.seed,
            horizon: j.horizon,
        })
    }
}

/// Whether a character takes part in a truncation at `k_max`.
fn within_truncation(k: &CharacterIndex, k_max: usize) -> bool {
    match k {
        CharacterIndex::Torus(v) => {
            let m = v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
            m >= 1 && m as usize <= k_max
        }
        CharacterIndex::Element(_) => true,
        CharacterIndex::Spin(s) => *s >= 1 && *s as usize <= k_max,
    }
}

/// `max_k |S_k(T_final) - int phi_k d lambda|` over the non-trivial test
/// functions with frequency at most `k_max` found in `series`.
pub fn weyl_statistic(group: &CompactGroup, series: &[CharacterSeries], k_max: usize) -> Result<f64> {
    let mut best: Option<f64> = None;
    for s in series.iter().filter(|s| within_truncation(&s.k, k_max)) {
        let last = s.last().ok_or(Error::Empty("character series without checkpoints"))?;
        let haar = group.character_haar_value(&s.k)?;
        let dev = (last - haar).norm();
        best = Some(best.map_or(dev, |b: f64| b.max(dev)));
    }
    best.ok_or(Error::Empty("no character series within the truncation"))
}

/// Star discrepancy `sup_x |mu([0, x)) - x|` of a measure on `[0, 1)`,
/// exact: `F(x) - x` is piecewise linear, so the supremum is attained at a
/// left or right limit at an atom or arc endpoint.
pub fn star_discrepancy_measure(measure: &CircleMeasure) -> Result<f64> {
    if measure.atoms.is_empty() && measure.arcs.is_empty() && measure.uniform == 0.0 {
        return Err(Error::Empty("measure has no mass"));
    }
    // (position, jump, slope change)
    let mut events: Vec<(f64, f64, f64)> = Vec::with_capacity(measure.atoms.len() + 3 * measure.arcs.len());
    events.extend(measure.atoms.iter().map(|&(p, w)| (p, w, 0.0)));
    let mut slope = measure.uniform;
    for arc in &measure.arcs {
        let density = arc.weight / arc.length;
        let end = arc.start + arc.length;
        events.push((arc.start, 0.0, density));
        if end <= 1.0 {
            events.push((end, 0.0, -density));
        } else {
            slope += density;
            events.push((end - 1.0, 0.0, -density));
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut f = 0.0;
    let mut x = 0.0;
    let mut sup: f64 = 0.0;
    let mut i = 0;
    while i < events.len() {
        let pos = events[i].0;
        f += slope * (pos - x);
        x = pos;
        sup = sup.max((f - pos).abs());
        while i < events.len() && events[i].0 == pos {
            f += events[i].1;
            slope += events[i].2;
            i += 1;
        }
        sup = sup.max((f - pos).abs());
    }
    f += slope * (1.0 - x);
    sup = sup.max((f - 1.0).abs());
    Ok(sup.clamp(0.0, 1.0))
}

/// Star discrepancy of weighted points of `[0, 1)` whose weights sum to 1.
pub fn star_discrepancy_1d(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Empty("no samples"));
    }
    let mut total = 0.0;
    for &(x, w) in samples {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!("sample {x} not in [0, 1)")));
        }
        if w.is_nan() || w < 0.0 {
            return Err(Error::InvalidParameter(format!("negative weight {w}")));
        }
        total += w;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!("weights sum to {total}, not 1")));
    }
    star_discrepancy_measure(&CircleMeasure::from_atoms(samples.to_vec()))
}

/// Total variation `(1/2) sum |p_i - q_i|` between probability vectors.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(format!("{} masses vs {} target masses", p.len(), q.len())));
    }
    Ok((0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()).clamp(0.0, 1.0))
}

pub fn tv_to_target(occ: &OccupationMeasure, target: &[f64]) -> Result<f64> {
    tv_distance(&occ.masses, target)
}

/// The base-`b` significand: the unique `s` in `{0} U [1, b)` with
/// `|y| = s b^k` for an integer `k`; `S_b(0) = 0`.
pub fn significand(y: f64, base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::InvalidParameter(format!("base {base} must be >= 2")));
    }
    if !y.is_finite() {
        return Err(Error::InvalidParameter(format!("{y} has no significand")));
    }
    let a = y.abs();
    if a == 0.0 {
        return Ok(0.0);
    }
    let b = f64::from(base);
    let mut k = (a.ln() / b.ln()).floor() as i32;
    let scale = |k: i32| {
        // divide by exact powers where possible; split so nothing overflows
        let h = k / 2;
        if k >= 0 {
            a / b.powi(h) / b.powi(k - h)
        } else {
            a * b.powi(-h) * b.powi(h - k)
        }
    };
    let mut s = scale(k);
    while s >= b {
        k += 1;
        s = scale(k);
    }
    while s < 1.0 {
        k -= 1;
        s = scale(k);
    }
    Ok(s)
}

/// Result of a Benford comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenfordSummary {
    /// `max_i |F(s_i) - log_b s_i|` over `s_i = b^{i/1000}`.
    pub statistic: f64,
    /// Mass with significand 0 (counted in `F` since `0 <= s`).
    pub zero_mass: f64,
    /// Mass of significands in `[1, 2)`, i.e. leading digit 1.
    pub leading_one: f64,
}

fn check_weights(weights: impl Iterator<Item = f64>) -> Result<()> {
    let mut total = 0.0;
    let mut any = false;
    for w in weights {
        if w.is_nan() || w < 0.0 {
            return Err(Error::InvalidParameter(format!("negative weight {w}")));
        }
        total += w;
        any = true;
    }
    if !any {
        return Err(Error::Empty("no values"));
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

/// Sup over the grid of positions `u_i = i/1000` of `|F(u_i) - u_i|`, where
/// `F(u_i)` is the total weight of entries with `key <= grid[i]`.
fn sweep_grid(mut keyed: Vec<(f64, f64)>, grid: &[f64], base_mass: f64) -> f64 {
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut f = base_mass;
    let mut j = 0;
    let mut sup: f64 = 0.0;
    for (i, g) in grid.iter().enumerate() {
        while j < keyed.len() && keyed[j].0 <= *g {
            f += keyed[j].1;
            j += 1;
        }
        let target = (i + 1) as f64 / grid.len() as f64;
        sup = sup.max((f - target).abs());
    }
    sup
}

/// Benford statistic of weighted values `(y, w)` with weights summing to 1.
pub fn benford_statistic(values: &[(f64, f64)], base: u32) -> Result<BenfordSummary> {
    check_weights(values.iter().map(|v| v.1))?;
    let b = f64::from(base);
    let mut zero_mass = 0.0;
    let mut leading_one = 0.0;
    let mut keyed = Vec::with_capacity(values.len());
    for &(y, w) in values {
        let s = significand(y, base)?;
        if s == 0.0 {
            zero_mass += w;
        } else {
            if s < 2.0 {
                leading_one += w;
            }
            keyed.push((s, w));
        }
    }
    let grid: Vec<f64> = (1..=BENFORD_GRID)
        .map(|i| if i == BENFORD_GRID { b } else { b.powf(i as f64 / BENFORD_GRID as f64) })
        .collect();
    Ok(BenfordSummary {
        statistic: sweep_grid(keyed, &grid, zero_mass),
        zero_mass,
        leading_one,
    })
}

/// Benford statistic from `log_b |y|` directly (for values that would
/// overflow a float, such as long products). `None` marks `y = 0`.
pub fn benford_statistic_log(log_values: &[(Option<f64>, f64)], base: u32) -> Result<BenfordSummary> {
    if base < 2 {
        return Err(Error::InvalidParameter(format!("base {base} must be >= 2")));
    }
    check_weights(log_values.iter().map(|v| v.1))?;
    let log_two = 2f64.ln() / f64::from(base).ln();
    let mut zero_mass = 0.0;
    let mut leading_one = 0.0;
    let mut keyed = Vec::with_capacity(log_values.len());
    for &(l, w) in log_values {
        match l {
            None => zero_mass += w,
            Some(l) => {
                let u = crate::group::frac(l);
                if u < log_two {
                    leading_one += w;
                }
                keyed.push((u, w));
            }
        }
    }
    let grid: Vec<f64> = (1..=BENFORD_GRID).map(|i| i as f64 / BENFORD_GRID as f64).collect();
    Ok(BenfordSummary {
        statistic: sweep_grid(keyed, &grid, zero_mass),
        zero_mass,
        leading_one,
    })
}

/// Benford statistic of a path from the occupation histogram of its
/// companion circle path `<log_b |X_t|>` on the standard 1000-cell
/// partition: `F(s_i)` is the mass of `[0, i/1000)`.
pub fn benford_statistic_occupation(occ: &OccupationMeasure, base: u32) -> Result<BenfordSummary> {
    if base < 2 {
        return Err(Error::InvalidParameter(format!("base {base} must be >= 2")));
    }
    let Partition::Torus { dim: 1, bins, offset } = occ.partition else {
        return Err(Error::InvalidPartition("expected a partition of the circle".into()));
    };
    if bins != BENFORD_GRID || offset != 0.0 {
        return Err(Error::InvalidPartition(format!(
            "Benford histogram needs {BENFORD_GRID} cells starting at 0"
        )));
    }
    let mut f = 0.0;
    let mut sup: f64 = 0.0;
    for (i, m) in occ.masses.iter().enumerate() {
        f += m;
        sup = sup.max((f - (i + 1) as f64 / bins as f64).abs());
    }
    let log_two = 2f64.ln() / f64::from(base).ln();
    let leading_one = occ
        .masses
        .iter()
        .enumerate()
        .filter(|(i, _)| ((i + 1) as f64 / bins as f64) <= log_two)
        .map(|(_, m)| m)
        .sum();
    Ok(BenfordSummary {
        statistic: sup,
        zero_mass: 0.0,
        leading_one,
    })
}

/// Mean of a character over i.i.d. samples, minus its Haar value.
pub fn empirical_character_deviation(
    group: &CompactGroup,
    k: &CharacterIndex,
    samples: &[crate::group::GroupPoint],
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Empty("no samples"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for g in samples {
        acc += group.character_eval(k, g)?;
    }
    Ok((acc / samples.len() as f64 - group.character_haar_value(k)?).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrepancy_examples() {
        assert_eq!(star_discrepancy_1d(&[(0.5, 1.0)]).unwrap(), 0.5);
        let b = 10;
        let pts: Vec<(f64, f64)> = (0..b).map(|j| ((2 * j + 1) as f64 / (2 * b) as f64, 0.1)).collect();
        assert!((star_discrepancy_1d(&pts).unwrap() - 0.05).abs() < 1e-12);
        assert_eq!(star_discrepancy_1d(&[(0.0, 0.5), (0.5, 0.5)]).unwrap(), 0.5);
        assert!(star_discrepancy_1d(&[]).is_err());
        assert!(star_discrepancy_1d(&[(0.2, 0.5)]).is_err());
        assert!(star_discrepancy_1d(&[(1.2, 1.0)]).is_err());
    }

    #[test]
    fn discrepancy_of_lebesgue_is_zero() {
        let m = CircleMeasure { atoms: vec![], arcs: vec![], uniform: 1.0 };
        assert!(star_discrepancy_measure(&m).unwrap() < 1e-15);
        let arcs = CircleMeasure {
            atoms: vec![],
            arcs: vec![
                crate::occupation::CircleArc { start: 0.7, length: 0.5, weight: 0.5 },
                crate::occupation::CircleArc { start: 0.2, length: 0.5, weight: 0.5 },
            ],
            uniform: 0.0,
        };
        assert!(star_discrepancy_measure(&arcs).unwrap() < 1e-12);
    }

    #[test]
    fn tv_examples() {
        let p = [0.2, 0.3, 0.5];
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        let n = 4;
        let delta = [1.0, 0.0, 0.0, 0.0];
        let uniform = vec![1.0 / n as f64; n];
        assert!((tv_distance(&delta, &uniform).unwrap() - (1.0 - 1.0 / n as f64)).abs() < 1e-15);
        assert!(tv_distance(&delta, &p).is_err());
    }

    #[test]
    fn significand_examples() {
        assert_eq!(significand(0.0, 10).unwrap(), 0.0);
        assert!((significand(-0.0325, 10).unwrap() - 3.25).abs() < 1e-12);
        assert_eq!(significand(12.0, 2).unwrap(), 1.5);
        assert!(significand(5.0, 1).is_err());
        assert_eq!(significand(1e22, 10).unwrap(), 1.0);
        assert_eq!(significand(1e-300, 2).unwrap(), significand(1e-300 * 1024.0, 2).unwrap());
        assert!((significand(2.5e-310, 10).unwrap() - 2.5).abs() < 1e-6);
    }

    #[test]
    fn benford_maximally_non_benford() {
        let n = 20;
        let values: Vec<(f64, f64)> = (1..=n).map(|i| (10f64.powi(i), 1.0 / n as f64)).collect();
        let s = benford_statistic(&values, 10).unwrap();
        assert!((s.statistic - 0.999).abs() < 1e-12, "{}", s.statistic);
        assert!((s.leading_one - 1.0).abs() < 1e-12);
    }

    #[test]
    fn benford_exact_law_on_grid() {
        // one value at each grid point s_i, weight 1/1000: F(s_i) = i/1000 exactly
        let values: Vec<(f64, f64)> = (1..=1000)
            .map(|i| (10f64.powf((i as f64 - 0.5) / 1000.0), 1e-3))
            .collect();
        let s = benford_statistic(&values, 10).unwrap();
        assert!(s.statistic < 1e-12, "{}", s.statistic);
    }

    #[test]
    fn benford_zero_mass_reported() {
        let s = benford_statistic(&[(0.0, 0.5), (3.0, 0.5)], 10).unwrap();
        assert_eq!(s.zero_mass, 0.5);
        assert!(benford_statistic(&[(1.0, 1.0)], 1).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = TestReport::at_most("weyl", 0.0123456789012345, 0.02)
            .with_param("K", 5)
            .with_run(42, 1e5);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"test":"weyl","statistic":0.0123456789012,"threshold":0.02,"comparison":"<=","verdict":"pass","params":{"K":5},"seed":42,"T":100000.0}"#
        );
        let back: TestReport = serde_json::from_str(&text).unwrap();
        assert!(back.pass);
        assert!(!TestReport::at_least("tv", 0.3, 0.45).pass);
    }
}
