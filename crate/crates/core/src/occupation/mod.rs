//! Normalized occupation measures `Lambda_T(B) = (1/T) Leb{t < T : X_t in B}`
//! and running character averages `(1/T) int_0^T phi_k(X_t) dt`.
//!
//! Paths are integrated segment by segment in closed form, so integrals over
//! jump paths (and over the exact drift-plus-jump paths on the circle) carry
//! no quadrature error. Grid paths use the left-endpoint rule, whose bias
//! for Brownian paths is `O(sqrt(dt))`.
//!
//! Character averages only witness equidistribution up to the chosen
//! truncation: a series over `|k| <= K` cannot see non-uniformity that lives
//! entirely at higher frequencies. Statistics built on top of them use
//! `K = 5` by default.

mod circle;
mod partition;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{frac, CharacterIndex, CompactGroup, GroupPoint};
use crate::levy::{GridPath, JumpPath};
use crate::path::{SamplePath, Segment};

pub use circle::{circle_measure, interval_mass, marginal_circle_measure, CircleArc, CircleMeasure};
pub use partition::Partition;

/// A test function integrated along paths.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    Character(CharacterIndex),
    /// Indicator of one cell of a partition.
    Bin { partition: Partition, bin: usize },
}

impl Observable {
    fn check(&self, group: &CompactGroup) -> Result<()> {
        match self {
            Observable::Character(k) => group.check_character(k),
            Observable::Bin { partition, bin } => {
                partition.check_group(group)?;
                if *bin < partition.len() {
                    Ok(())
                } else {
                    Err(Error::InvalidPartition(format!("bin {bin} out of range")))
                }
            }
        }
    }

    /// Value at a point.
    pub fn eval(&self, group: &CompactGroup, g: &GroupPoint) -> Result<Complex64> {
        self.check(group)?;
        Ok(match self {
            Observable::Character(k) => group.character_eval(k, g)?,
            Observable::Bin { partition, bin } => {
                Complex64::new(if partition.bin_of(g)? == *bin { 1.0 } else { 0.0 }, 0.0)
            }
        })
    }

    /// `int_0^len phi(X_{start + s}) ds` over the first `len` time units of a segment.
    fn segment_integral(&self, group: &CompactGroup, seg: &Segment, len: f64) -> Complex64 {
        match self {
            Observable::Character(k) => character_segment_integral(group, k, seg, len),
            Observable::Bin { partition, bin } => {
                if seg.velocity == 0.0 {
                    let hit = partition.bin_of(&seg.point).map(|b| b == *bin).unwrap_or(false);
                    return Complex64::new(if hit { len } else { 0.0 }, 0.0);
                }
                let mut masses = vec![0.0; partition.len()];
                accumulate_moving(partition, seg, len, &mut masses);
                Complex64::new(masses[*bin], 0.0)
            }
        }
    }
}

/// `sin(z) / z`, accurate near zero.
fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

fn character_segment_integral(group: &CompactGroup, k: &CharacterIndex, seg: &Segment, len: f64) -> Complex64 {
    if seg.velocity == 0.0 {
        return group.character_unchecked(k, &seg.point) * len;
    }
    // moving point on T^1: int_0^len e^{2 pi i k (x + v s)} ds
    let (Some(x), CharacterIndex::Torus(kv)) = (seg.point.as_circle(), k) else {
        return group.character_unchecked(k, &seg.point) * len;
    };
    let kf = kv[0] as f64;
    let half_turns = kf * seg.velocity * len / 2.0;
    let phase = frac(frac(kf * x) + frac(half_turns));
    Complex64::from_polar(len * sinc(2.0 * PI * half_turns), 2.0 * PI * phase)
}

/// Adds the time a moving segment spends in each torus cell (first `len`
/// time units) to `masses`.
fn accumulate_moving(partition: &Partition, seg: &Segment, len: f64, masses: &mut [f64]) {
    let Partition::Torus { bins, offset, .. } = *partition else {
        return;
    };
    let x = seg.point.as_circle().unwrap_or(0.0);
    let v = seg.velocity;
    let arc = v.abs() * len;
    if arc == 0.0 || !arc.is_finite() {
        masses[Partition::torus_cell(bins, offset, x)] += len;
        return;
    }
    let time_per_length = len / arc;
    let width = 1.0 / bins as f64;
    let wraps = arc.floor();
    if wraps > 0.0 {
        let each = wraps * width * time_per_length;
        masses.iter_mut().for_each(|m| *m += each);
    }
    let rem = arc - wraps;
    if rem <= 0.0 {
        return;
    }
    // remaining arc [s, s + rem) in partition coordinates
    let u0 = frac(x - offset);
    let s = if v > 0.0 { u0 } else { frac(u0 - rem) };
    let mut pos = s;
    let mut left = rem;
    let mut cell = ((pos * bins as f64) as usize).min(bins - 1);
    for _ in 0..=2 * bins + 1 {
        if left <= 0.0 {
            break;
        }
        let cell_end = (cell + 1) as f64 * width;
        let take = (cell_end - pos).min(left).max(0.0);
        masses[cell] += take * time_per_length;
        left -= take;
        pos = cell_end;
        cell += 1;
        if cell == bins {
            cell = 0;
            pos = 0.0;
        }
    }
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon > 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(Error::Empty("path horizon must be positive"))
    }
}

/// `(1/T) int_0^T phi(X_t) dt`, exact for segment paths.
pub fn integrate_path<P: SamplePath + ?Sized>(path: &P, phi: &Observable) -> Result<Complex64> {
    check_horizon(path.horizon())?;
    phi.check(path.group())?;
    let group = path.group();
    let mut acc = Complex64::new(0.0, 0.0);
    path.for_each_segment(&mut |seg| acc += phi.segment_integral(group, seg, seg.duration));
    Ok(acc / path.horizon())
}

/// Exact time average of `phi` along a piecewise-constant path.
pub fn integrate_jump_path(path: &JumpPath, phi: &Observable) -> Result<Complex64> {
    integrate_path(path, phi)
}

/// Left-endpoint Riemann average `(sum_i phi(x_i) w_i) / T` of a grid path,
/// with `w_i = dt` (the last point carries any remainder of `T`).
pub fn integrate_grid_path<T>(path: &GridPath<T>, phi: impl Fn(&T) -> Complex64) -> Result<Complex64> {
    if path.len() < 2 {
        return Err(Error::InvalidParameter("grid path needs at least 2 points".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in path.values().iter().zip(path.weights()) {
        if w > 0.0 {
            acc += phi(x) * w;
        }
    }
    Ok(acc / path.horizon())
}

/// Time-weighted cell masses of a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupationMeasure {
    pub partition: Partition,
    pub masses: Vec<f64>,
    pub total_time: f64,
}

impl OccupationMeasure {
    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Combines occupation measures of consecutive time ranges: the result
    /// is the time-weighted average.
    pub fn merge(&self, other: &OccupationMeasure) -> Result<OccupationMeasure> {
        if self.partition != other.partition {
            return Err(Error::InvalidPartition("cannot merge different partitions".into()));
        }
        let total = self.total_time + other.total_time;
        let (a, b) = (self.total_time / total, other.total_time / total);
        Ok(OccupationMeasure {
            partition: self.partition.clone(),
            masses: self
                .masses
                .iter()
                .zip(&other.masses)
                .map(|(x, y)| a * x + b * y)
                .collect(),
            total_time: total,
        })
    }

    /// Ratio of each mass to the Haar mass of its cell; identically 1 for a
    /// uniform path. Used for the rotation-angle histogram.
    pub fn haar_ratio(&self) -> Vec<f64> {
        self.masses
            .iter()
            .zip(self.partition.haar_masses())
            .map(|(m, h)| if h > 0.0 { m / h } else { 0.0 })
            .collect()
    }

    /// Sum of the masses of cells outside `support`.
    pub fn mass_outside(&self, support: &[usize]) -> f64 {
        self.masses
            .iter()
            .enumerate()
            .filter(|(i, _)| !support.contains(i))
            .map(|(_, m)| m)
            .sum()
    }
}

/// Exact occupation histogram of a segment path.
pub fn occupation_histogram<P: SamplePath + ?Sized>(path: &P, partition: &Partition) -> Result<OccupationMeasure> {
    partition.validate()?;
    partition.check_group(path.group())?;
    check_horizon(path.horizon())?;
    let mut times = vec![0.0; partition.len()];
    let mut failure = None;
    path.for_each_segment(&mut |seg| {
        if seg.velocity != 0.0 {
            accumulate_moving(partition, seg, seg.duration, &mut times);
        } else {
            match partition.bin_of(&seg.point) {
                Ok(b) => times[b] += seg.duration,
                Err(e) => failure = Some(e),
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let total_time = path.horizon();
    Ok(OccupationMeasure {
        partition: partition.clone(),
        masses: times.into_iter().map(|t| t / total_time).collect(),
        total_time,
    })
}

/// Left-endpoint occupation histogram of a grid path.
pub fn occupation_histogram_grid(
    path: &GridPath<GroupPoint>,
    group: &CompactGroup,
    partition: &Partition,
) -> Result<OccupationMeasure> {
    partition.validate()?;
    partition.check_group(group)?;
    if path.len() < 2 {
        return Err(Error::InvalidParameter("grid path needs at least 2 points".into()));
    }
    let mut times = vec![0.0; partition.len()];
    for (x, w) in path.values().iter().zip(path.weights()) {
        times[partition.bin_of(x)?] += w;
    }
    Ok(OccupationMeasure {
        partition: partition.clone(),
        masses: times.into_iter().map(|t| t / path.horizon()).collect(),
        total_time: path.horizon(),
    })
}

/// Running averages `S_k(T_i)` of one character at increasing checkpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterSeries {
    pub k: CharacterIndex,
    pub checkpoints: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl CharacterSeries {
    pub fn last(&self) -> Option<Complex64> {
        self.values.last().copied()
    }
}

/// Computes `S_k(T_i)` for every `k` and checkpoint in one pass. Each value
/// equals [`integrate_path`] applied to the path truncated at `T_i`.
pub fn character_series<P: SamplePath + ?Sized>(
    path: &P,
    ks: &[CharacterIndex],
    checkpoints: &[f64],
) -> Result<Vec<CharacterSeries>> {
    let group = path.group();
    for k in ks {
        group.check_character(k)?;
    }
    let horizon = path.horizon();
    check_horizon(horizon)?;
    let mut prev = 0.0;
    for &c in checkpoints {
        if c > horizon {
            return Err(Error::CheckpointBeyondHorizon {
                checkpoint: c,
                horizon,
            });
        }
        if c.is_nan() || c <= prev {
            return Err(Error::InvalidParameter(format!(
                "checkpoints must be positive and strictly increasing ({c} after {prev})"
            )));
        }
        prev = c;
    }
    let observables: Vec<Observable> = ks.iter().cloned().map(Observable::Character).collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); ks.len()];
    let mut values: Vec<Vec<Complex64>> = vec![Vec::with_capacity(checkpoints.len()); ks.len()];
    let mut next = 0usize;
    path.for_each_segment(&mut |seg| {
        let end = seg.start + seg.duration;
        while next < checkpoints.len() && checkpoints[next] <= end {
            let c = checkpoints[next];
            let partial = c - seg.start;
            for (j, phi) in observables.iter().enumerate() {
                let piece = if partial > 0.0 {
                    phi.segment_integral(group, seg, partial)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                values[j].push((acc[j] + piece) / c);
            }
            next += 1;
        }
        for (j, phi) in observables.iter().enumerate() {
            acc[j] += phi.segment_integral(group, seg, seg.duration);
        }
    });
    // checkpoints equal to the horizon are always reached inside the last segment
    Ok(ks
        .iter()
        .zip(values)
        .map(|(k, values)| CharacterSeries {
            k: k.clone(),
            checkpoints: checkpoints.to_vec(),
            values,
        })
        .collect())
}

/// Log-spaced checkpoints `T * 10^{-j/per_decade}` down to `min` (inclusive
/// of `T`), in increasing order.
pub fn log_checkpoints(horizon: f64, min: f64, per_decade: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut j = 0usize;
    loop {
        let t = horizon * 10f64.powf(-(j as f64) / per_decade.max(1) as f64);
        if t < min || out.len() > 10_000 {
            break;
        }
        out.push(t);
        j += 1;
    }
    out.reverse();
    out
}
