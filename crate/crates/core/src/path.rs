//! Group-valued sample paths as sequences of elementary segments.
//!
//! Every path the toolkit produces is right-continuous and, on each segment
//! `[start, start + duration)`, either constant or (on `T^1` only) moving at a
//! constant velocity. Integrals against characters and bin indicators are
//! therefore computed in closed form segment by segment.

use crate::error::{Error, Result};
use crate::group::{CompactGroup, GroupPoint};

/// One piece of a path: `X_t = point + velocity * (t - start)` (mod 1) for
/// `t` in `[start, start + duration)`. `velocity` is zero except on `T^1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub duration: f64,
    pub point: GroupPoint,
    pub velocity: f64,
}

impl Segment {
    pub fn constant(start: f64, duration: f64, point: GroupPoint) -> Self {
        Segment {
            start,
            duration,
            point,
            velocity: 0.0,
        }
    }

    /// Position `offset` time units after the segment start.
    pub fn point_after(&self, offset: f64) -> GroupPoint {
        if self.velocity == 0.0 {
            return self.point.clone();
        }
        match self.point.as_circle() {
            Some(x) => GroupPoint::circle(x + self.velocity * offset),
            None => self.point.clone(),
        }
    }

    /// Restriction to `[start, start + len)`.
    pub fn truncated(&self, len: f64) -> Segment {
        Segment {
            duration: len,
            ..self.clone()
        }
    }
}

/// A sample path on a compact group over `[0, horizon]`.
pub trait SamplePath {
    fn group(&self) -> &CompactGroup;

    fn horizon(&self) -> f64;

    /// Whether the path is represented without discretization error.
    fn is_exact(&self) -> bool;

    /// Visits the segments in time order. Durations are positive and add up
    /// to the horizon.
    fn for_each_segment(&self, f: &mut dyn FnMut(&Segment));

    /// The (right-continuous) value at time `t` in `[0, horizon]`.
    fn value_at(&self, t: f64) -> Result<GroupPoint> {
        check_time(t, self.horizon())?;
        let mut found = None;
        self.for_each_segment(&mut |seg| {
            if found.is_none() && t < seg.start + seg.duration {
                found = Some(seg.point_after(t - seg.start));
            }
        });
        if let Some(p) = found {
            return Ok(p);
        }
        // t == horizon: value of the last segment
        let mut last = None;
        self.for_each_segment(&mut |seg| last = Some(seg.point_after(t - seg.start)));
        last.ok_or(Error::Empty("path has no segments"))
    }

    /// Samples the path at `0, dt, 2 dt, ...` up to the horizon.
    fn sample_grid(&self, dt: f64) -> Result<crate::levy::GridPath<GroupPoint>> {
        let horizon = self.horizon();
        let n = crate::levy::grid_len(horizon, dt)?;
        let mut values = Vec::with_capacity(n);
        let mut next = 0usize;
        let mut last: Option<Segment> = None;
        self.for_each_segment(&mut |seg| {
            let end = seg.start + seg.duration;
            while next < n {
                let t = next as f64 * dt;
                if t >= end {
                    break;
                }
                values.push(seg.point_after(t - seg.start));
                next += 1;
            }
            last = Some(seg.clone());
        });
        if let Some(seg) = last {
            while next < n {
                let t = next as f64 * dt;
                values.push(seg.point_after(t - seg.start));
                next += 1;
            }
        }
        crate::levy::GridPath::new(dt, horizon, values)
    }
}

pub(crate) fn check_time(t: f64, horizon: f64) -> Result<()> {
    if (0.0..=horizon).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("time {t} outside [0, {horizon}]")))
    }
}
