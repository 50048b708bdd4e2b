use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{Error, Result};
use crate::group::{CompactGroup, GroupPoint};
use crate::path::{check_time, SamplePath, Segment};
use crate::rng::{stream_rng, SimRng, STREAM_JUMPS, STREAM_STEPS};

/// A finitely supported step distribution on a group.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDistribution {
    points: Vec<GroupPoint>,
    cumulative: Vec<f64>,
    probs: Vec<f64>,
}

impl StepDistribution {
    /// Probabilities must be positive and sum to 1 within `1e-12`; they are
    /// renormalized.
    pub fn new(group: &CompactGroup, atoms: Vec<(GroupPoint, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidSteps("empty step distribution".into()));
        }
        let mut total = 0.0;
        for (p, w) in &atoms {
            group.check(p).map_err(|e| Error::InvalidSteps(e.to_string()))?;
            if !(*w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidSteps(format!("probability {w} must be positive")));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSteps(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self::from_normalized(atoms, total))
    }

    /// Uniform distribution on the given support.
    pub fn uniform(group: &CompactGroup, support: Vec<GroupPoint>) -> Result<Self> {
        let n = support.len();
        if n == 0 {
            return Err(Error::InvalidSteps("empty step distribution".into()));
        }
        let atoms = support.into_iter().map(|p| (p, 1.0 / n as f64)).collect::<Vec<_>>();
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        for (p, _) in &atoms {
            group.check(p).map_err(|e| Error::InvalidSteps(e.to_string()))?;
        }
        Ok(Self::from_normalized(atoms, total))
    }

    fn from_normalized(atoms: Vec<(GroupPoint, f64)>, total: f64) -> Self {
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut probs = Vec::with_capacity(atoms.len());
        let mut points = Vec::with_capacity(atoms.len());
        for (p, w) in atoms {
            let w = w / total;
            acc += w;
            cumulative.push(acc);
            probs.push(w);
            points.push(p);
        }
        if let Some(last) = cumulative.last_mut() {
            *last = 1.0;
        }
        StepDistribution {
            points,
            cumulative,
            probs,
        }
    }

    pub fn support(&self) -> &[GroupPoint] {
        &self.points
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn sample<'a, R: Rng + ?Sized>(&'a self, rng: &mut R) -> &'a GroupPoint {
        if self.points.len() == 1 {
            return &self.points[0];
        }
        let u: f64 = rng.random();
        let i = self.cumulative.partition_point(|&c| c <= u).min(self.points.len() - 1);
        &self.points[i]
    }
}

/// A piecewise-constant right-continuous path: `X_0` until the first jump
/// time, then the post-jump state of the last jump at or before `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpPath {
    group: CompactGroup,
    initial: GroupPoint,
    horizon: f64,
    times: Vec<f64>,
    states: Vec<GroupPoint>,
}

impl JumpPath {
    pub fn new(
        group: CompactGroup,
        initial: GroupPoint,
        horizon: f64,
        times: Vec<f64>,
        states: Vec<GroupPoint>,
    ) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!("horizon {horizon} must be positive")));
        }
        if times.len() != states.len() {
            return Err(Error::LengthMismatch(format!(
                "{} jump times but {} states",
                times.len(),
                states.len()
            )));
        }
        let mut prev = 0.0;
        for &t in &times {
            if !(t > prev && t <= horizon) {
                return Err(Error::InvalidParameter(format!(
                    "jump times must be strictly increasing in (0, {horizon}], got {t} after {prev}"
                )));
            }
            prev = t;
        }
        group.check(&initial)?;
        for s in &states {
            group.check(s)?;
        }
        Ok(JumpPath {
            group,
            initial,
            horizon,
            times,
            states,
        })
    }

    /// A constant path.
    pub fn constant(group: CompactGroup, point: GroupPoint, horizon: f64) -> Result<Self> {
        JumpPath::new(group, point, horizon, Vec::new(), Vec::new())
    }

    /// Embeds a sequence `y_1, ..., y_N` as the path `t -> y_{floor(t)+1}` on `[0, N]`.
    pub fn from_sequence(group: CompactGroup, sequence: Vec<GroupPoint>) -> Result<Self> {
        let mut it = sequence.into_iter();
        let first = it.next().ok_or(Error::Empty("sequence"))?;
        let states: Vec<GroupPoint> = it.collect();
        let times = (1..=states.len()).map(|i| i as f64).collect();
        let horizon = (states.len() + 1) as f64;
        JumpPath::new(group, first, horizon, times, states)
    }

    pub fn initial(&self) -> &GroupPoint {
        &self.initial
    }

    pub fn jump_times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[GroupPoint] {
        &self.states
    }

    pub fn jump_count(&self) -> usize {
        self.times.len()
    }

    /// The same path restricted to `[0, horizon]`.
    pub fn truncated(&self, horizon: f64) -> Result<JumpPath> {
        if !(horizon > 0.0 && horizon <= self.horizon) {
            return Err(Error::CheckpointBeyondHorizon {
                checkpoint: horizon,
                horizon: self.horizon,
            });
        }
        let n = self.times.partition_point(|&t| t <= horizon);
        Ok(JumpPath {
            group: self.group.clone(),
            initial: self.initial.clone(),
            horizon,
            times: self.times[..n].to_vec(),
            states: self.states[..n].to_vec(),
        })
    }
}

impl SamplePath for JumpPath {
    fn group(&self) -> &CompactGroup {
        &self.group
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn for_each_segment(&self, f: &mut dyn FnMut(&Segment)) {
        let mut start = 0.0;
        let mut point = &self.initial;
        for (t, s) in self.times.iter().zip(&self.states) {
            f(&Segment::constant(start, t - start, point.clone()));
            start = *t;
            point = s;
        }
        if self.horizon > start {
            f(&Segment::constant(start, self.horizon - start, point.clone()));
        }
    }

    fn value_at(&self, t: f64) -> Result<GroupPoint> {
        check_time(t, self.horizon)?;
        let n = self.times.partition_point(|&s| s <= t);
        Ok(if n == 0 {
            self.initial.clone()
        } else {
            self.states[n - 1].clone()
        })
    }
}

/// Draws exponential(`rate`) inter-arrival times on `(0, horizon]`.
pub(crate) fn poisson_times(rng: &mut SimRng, rate: f64, horizon: f64) -> Result<Vec<f64>> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::InvalidParameter(format!("rate {rate} must be positive")));
    }
    let exp = Exp::new(rate).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut times = Vec::with_capacity((rate * horizon * 1.05) as usize + 16);
    let mut t = 0.0;
    loop {
        t += exp.sample(rng);
        if t > horizon {
            break;
        }
        // consecutive times can coincide only through underflow of the gap
        if times.last().is_some_and(|&last| t <= last) {
            continue;
        }
        times.push(t);
    }
    Ok(times)
}

/// Simulates the compound-Poisson product `X_t = X_0 xi_1 ... xi_{N_t}` with
/// `N` a Poisson process of the given rate and `xi_i` i.i.d. steps.
pub fn simulate_jump_levy_group(
    group: &CompactGroup,
    steps: &StepDistribution,
    rate: f64,
    horizon: f64,
    seed: u64,
    initial: &GroupPoint,
) -> Result<JumpPath> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} must be positive")));
    }
    group.check(initial)?;
    let mut rng = stream_rng(seed, STREAM_JUMPS);
    let times = poisson_times(&mut rng, rate, horizon)?;
    let mut states = Vec::with_capacity(times.len());
    let mut current = initial.clone();
    for _ in &times {
        current = group.multiply_unchecked(&current, steps.sample(&mut rng));
        states.push(current.clone());
    }
    JumpPath::new(group.clone(), initial.clone(), horizon, times, states)
}

/// The first `n` partial products `X_0 xi_1 ... xi_k`, `k = 1..=n`.
pub fn partial_products(
    group: &CompactGroup,
    steps: &StepDistribution,
    n: usize,
    seed: u64,
    initial: &GroupPoint,
) -> Result<Vec<GroupPoint>> {
    group.check(initial)?;
    let mut rng = stream_rng(seed, STREAM_STEPS);
    let mut out = Vec::with_capacity(n);
    let mut current = initial.clone();
    for _ in 0..n {
        current = group.multiply_unchecked(&current, steps.sample(&mut rng));
        out.push(current.clone());
    }
    Ok(out)
}
