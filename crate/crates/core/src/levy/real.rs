use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::group::{frac, CompactGroup, GroupPoint};
use crate::path::{check_time, SamplePath, Segment};
use crate::rng::{stream_rng, SimRng, STREAM_DIFFUSION, STREAM_JUMPS};

use super::grid::{grid_len, GridPath};
use super::jump::poisson_times;
use super::triple::LevyTriple;

/// Default Brownian grid step.
pub const DEFAULT_DT: f64 = 1e-3;

/// A piece of a real-valued path: `Y_t = value + velocity * (t - start)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSegment {
    pub start: f64,
    pub duration: f64,
    pub value: f64,
    pub velocity: f64,
}

/// A sample path of a real Levy process: drift plus Brownian part on a time
/// grid, plus an exact ledger of compound-Poisson jumps.
///
/// Without a Gaussian component the path is exact (linear between jumps).
/// With one, the continuous part `path_drift * t + sigma W_t` is known at
/// grid times and held constant on each grid cell (left-endpoint rule); the
/// grid values are regenerated from the seed on demand instead of stored.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLevyPath {
    triple: LevyTriple,
    horizon: f64,
    initial: f64,
    seed: u64,
    drift: f64,
    sigma: f64,
    dt: Option<f64>,
    jump_times: Vec<f64>,
    jump_sizes: Vec<f64>,
    jump_cumulative: Vec<f64>,
}

/// Simulates `Y` with `Y_0 = initial`. `dt` is only used when `sigma2 > 0`.
///
/// Jumps arrive at exponential(`nu(R)`) inter-arrival times; each jump is
/// `x_j` with probability `m_j / nu(R)`. Jumps and Gaussian increments use
/// separate random streams of `seed`.
pub fn simulate_real_levy(
    triple: &LevyTriple,
    horizon: f64,
    dt: f64,
    seed: u64,
) -> Result<RealLevyPath> {
    simulate_real_levy_from(triple, horizon, dt, seed, 0.0)
}

pub fn simulate_real_levy_from(
    triple: &LevyTriple,
    horizon: f64,
    dt: f64,
    seed: u64,
    initial: f64,
) -> Result<RealLevyPath> {
    triple.validate()?;
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} must be positive")));
    }
    let dt = if triple.sigma2 > 0.0 {
        grid_len(horizon, dt)?;
        Some(dt)
    } else {
        None
    };

    let (jump_times, jump_sizes) = if triple.nu.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let mut rng = stream_rng(seed, STREAM_JUMPS);
        let rate = triple.total_rate();
        let times = poisson_times(&mut rng, rate, horizon)?;
        let mut cumulative = Vec::with_capacity(triple.nu.len());
        let mut acc = 0.0;
        for a in &triple.nu {
            acc += a.mass / rate;
            cumulative.push(acc);
        }
        let sizes = times
            .iter()
            .map(|_| {
                if triple.nu.len() == 1 {
                    return triple.nu[0].location;
                }
                let u: f64 = rng.random();
                let i = cumulative.partition_point(|&c| c <= u).min(triple.nu.len() - 1);
                triple.nu[i].location
            })
            .collect();
        (times, sizes)
    };
    let mut acc = 0.0;
    let jump_cumulative = jump_sizes
        .iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect();

    Ok(RealLevyPath {
        triple: triple.clone(),
        horizon,
        initial,
        seed,
        drift: triple.path_drift(),
        sigma: triple.sigma2.sqrt(),
        dt,
        jump_times,
        jump_sizes,
        jump_cumulative,
    })
}

/// Iterates the continuous part at grid indices `0, 1, 2, ...`.
struct ContinuousGrid {
    rng: SimRng,
    dt: f64,
    sqrt_dt: f64,
    drift: f64,
    sigma: f64,
    brownian: f64,
    index: usize,
}

impl ContinuousGrid {
    fn new(path: &RealLevyPath, dt: f64) -> Self {
        ContinuousGrid {
            rng: stream_rng(path.seed, STREAM_DIFFUSION),
            dt,
            sqrt_dt: dt.sqrt(),
            drift: path.drift,
            sigma: path.sigma,
            brownian: 0.0,
            index: 0,
        }
    }
}

impl Iterator for ContinuousGrid {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let value = self.drift * (self.index as f64 * self.dt) + self.sigma * self.brownian;
        let z: f64 = self.rng.sample(StandardNormal);
        self.brownian += self.sqrt_dt * z;
        self.index += 1;
        Some(value)
    }
}

impl RealLevyPath {
    pub fn triple(&self) -> &LevyTriple {
        &self.triple
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn initial(&self) -> f64 {
        self.initial
    }

    /// True when there is no Gaussian component and hence no discretization.
    pub fn is_exact(&self) -> bool {
        self.dt.is_none()
    }

    pub fn dt(&self) -> Option<f64> {
        self.dt
    }

    pub fn drift(&self) -> f64 {
        self.drift
    }

    pub fn jump_times(&self) -> &[f64] {
        &self.jump_times
    }

    pub fn jump_sizes(&self) -> &[f64] {
        &self.jump_sizes
    }

    pub fn jump_count(&self) -> usize {
        self.jump_times.len()
    }

    /// Sum of all jumps at times `<= t`.
    pub fn jumps_up_to(&self, t: f64) -> f64 {
        let n = self.jump_times.partition_point(|&s| s <= t);
        if n == 0 {
            0.0
        } else {
            self.jump_cumulative[n - 1]
        }
    }

    /// `Y_t`. On the Gaussian branch this replays the grid up to `t`.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        check_time(t, self.horizon)?;
        let continuous = match self.dt {
            None => self.drift * t,
            Some(dt) => {
                let i = ((t / dt) * (1.0 + 1e-12)).floor() as usize;
                ContinuousGrid::new(self, dt).nth(i).expect("grid iterator is infinite")
            }
        };
        Ok(self.initial + continuous + self.jumps_up_to(t))
    }

    /// Visits the segments of the path in time order.
    pub fn for_each_real_segment(&self, f: &mut dyn FnMut(&RealSegment)) {
        match self.dt {
            None => {
                let mut start = 0.0;
                let mut jumps = 0.0;
                for (t, cum) in self.jump_times.iter().zip(&self.jump_cumulative) {
                    f(&RealSegment {
                        start,
                        duration: t - start,
                        value: self.initial + self.drift * start + jumps,
                        velocity: self.drift,
                    });
                    start = *t;
                    jumps = *cum;
                }
                if self.horizon > start {
                    f(&RealSegment {
                        start,
                        duration: self.horizon - start,
                        value: self.initial + self.drift * start + jumps,
                        velocity: self.drift,
                    });
                }
            }
            Some(dt) => {
                let n = grid_len(self.horizon, dt).expect("validated at construction");
                let mut grid = ContinuousGrid::new(self, dt);
                let mut next_jump = 0usize;
                let mut jumps = 0.0;
                // jumps at exactly t = 0 cannot occur (times are > 0)
                for i in 0..n {
                    let g = grid.next().expect("infinite");
                    let cell_start = i as f64 * dt;
                    let cell_end = if i + 1 < n { (i + 1) as f64 * dt } else { self.horizon };
                    // jumps landing on the grid time belong to this cell's value
                    while next_jump < self.jump_times.len() && self.jump_times[next_jump] <= cell_start {
                        jumps = self.jump_cumulative[next_jump];
                        next_jump += 1;
                    }
                    let mut start = cell_start;
                    while next_jump < self.jump_times.len() && self.jump_times[next_jump] < cell_end {
                        let t = self.jump_times[next_jump];
                        f(&RealSegment {
                            start,
                            duration: t - start,
                            value: self.initial + g + jumps,
                            velocity: 0.0,
                        });
                        start = t;
                        jumps = self.jump_cumulative[next_jump];
                        next_jump += 1;
                    }
                    if cell_end > start {
                        f(&RealSegment {
                            start,
                            duration: cell_end - start,
                            value: self.initial + g + jumps,
                            velocity: 0.0,
                        });
                    }
                }
            }
        }
    }

    /// Materializes the path on a grid of step `dt` (the path's own step on
    /// the Gaussian branch, any step otherwise).
    pub fn to_grid(&self, dt: f64) -> Result<GridPath<f64>> {
        let n = grid_len(self.horizon, dt)?;
        let mut values = Vec::with_capacity(n);
        if self.dt == Some(dt) {
            let mut next_jump = 0usize;
            let mut jumps = 0.0;
            for (i, g) in ContinuousGrid::new(self, dt).take(n).enumerate() {
                let t = i as f64 * dt;
                while next_jump < self.jump_times.len() && self.jump_times[next_jump] <= t {
                    jumps = self.jump_cumulative[next_jump];
                    next_jump += 1;
                }
                values.push(self.initial + g + jumps);
            }
            return GridPath::new(dt, self.horizon, values);
        }
        let mut next = 0usize;
        self.for_each_real_segment(&mut |seg| {
            let end = seg.start + seg.duration;
            while next < n && (next as f64 * dt) < end {
                let t = next as f64 * dt;
                values.push(seg.value + seg.velocity * (t - seg.start));
                next += 1;
            }
        });
        while values.len() < n {
            let t = (values.len() as f64 * dt).min(self.horizon);
            values.push(self.value_at(t)?);
        }
        GridPath::new(dt, self.horizon, values)
    }
}

/// The torus path `t -> <offset + scale * Y_t + rate * t>` built from a real
/// Levy path. `project_to_torus` is the case `offset = 0, scale = 1, rate = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusLevyPath {
    base: RealLevyPath,
    group: CompactGroup,
    offset: f64,
    scale: f64,
    rate: f64,
}

/// Pointwise fractional part `<Y_t>`.
pub fn project_to_torus(path: RealLevyPath) -> TorusLevyPath {
    TorusLevyPath::affine(path, 0.0, 1.0, 0.0)
}

impl TorusLevyPath {
    pub fn affine(base: RealLevyPath, offset: f64, scale: f64, rate: f64) -> Self {
        TorusLevyPath {
            base,
            group: CompactGroup::circle(),
            offset,
            scale,
            rate,
        }
    }

    pub fn base(&self) -> &RealLevyPath {
        &self.base
    }

    pub fn with_bins(mut self, bins: usize) -> Self {
        self.group = self.group.with_partition_hint(bins);
        self
    }

    fn lift(&self, y: f64, t: f64) -> f64 {
        self.offset + self.scale * y + self.rate * t
    }
}

impl SamplePath for TorusLevyPath {
    fn group(&self) -> &CompactGroup {
        &self.group
    }

    fn horizon(&self) -> f64 {
        self.base.horizon
    }

    fn is_exact(&self) -> bool {
        self.base.is_exact()
    }

    fn for_each_segment(&self, f: &mut dyn FnMut(&Segment)) {
        self.base.for_each_real_segment(&mut |seg| {
            f(&Segment {
                start: seg.start,
                duration: seg.duration,
                point: GroupPoint::circle(self.lift(seg.value, seg.start)),
                velocity: self.scale * seg.velocity + self.rate,
            })
        });
    }

    fn value_at(&self, t: f64) -> Result<GroupPoint> {
        let y = self.base.value_at(t)?;
        Ok(GroupPoint::circle(self.lift(y, t)))
    }
}

/// `X_t = a exp(c Y_t + d t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricPath {
    base: RealLevyPath,
    a: f64,
    c: f64,
    d: f64,
}

pub fn geometric_transform(path: RealLevyPath, a: f64, c: f64, d: f64) -> Result<GeometricPath> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidParameter("c must be nonzero".into()));
    }
    if !d.is_finite() {
        return Err(Error::InvalidParameter("d must be finite".into()));
    }
    Ok(GeometricPath { base: path, a, c, d })
}

impl GeometricPath {
    pub fn base(&self) -> &RealLevyPath {
        &self.base
    }

    pub fn value_at(&self, t: f64) -> Result<f64> {
        let y = self.base.value_at(t)?;
        Ok(self.a * (self.c * y + self.d * t).exp())
    }

    /// `log_b |X_t| = log_b |a| + (c Y_t + d t) / ln b`, before reduction mod 1.
    pub fn log_abs_at(&self, t: f64, base: u32) -> Result<f64> {
        check_base(base)?;
        let ln_b = f64::from(base).ln();
        let y = self.base.value_at(t)?;
        Ok(self.a.abs().ln() / ln_b + (self.c * y + self.d * t) / ln_b)
    }

    /// The companion torus path `<log_b |X_t|>`, whose equidistribution is the
    /// `b`-Benford property of `X`.
    pub fn log_torus(&self, base: u32) -> Result<TorusLevyPath> {
        check_base(base)?;
        let ln_b = f64::from(base).ln();
        Ok(TorusLevyPath::affine(
            self.base.clone(),
            log_significand(self.a, base),
            self.c / ln_b,
            self.d / ln_b,
        ))
    }
}

pub(crate) fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidParameter(format!("base {base} must be >= 2")))
    } else {
        Ok(())
    }
}

/// `log_b S_b(a)` in `[0, 1)`, i.e. `<log_b |a|>` computed from the significand.
/// `<log_b |a|>`, the starting point of the companion circle path.
pub fn log_significand(a: f64, base: u32) -> f64 {
    let s = crate::uniformity::significand(a, base).unwrap_or(0.0);
    if s == 0.0 {
        0.0
    } else {
        frac(s.ln() / f64::from(base).ln())
    }
}
