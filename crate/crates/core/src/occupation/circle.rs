use crate::error::{Error, Result};
use crate::group::frac;
use crate::path::SamplePath;

/// Uniform mass `weight` spread over the arc `[start, start + length)` mod 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArc {
    pub start: f64,
    pub length: f64,
    pub weight: f64,
}

/// A probability measure on `[0, 1)` made of point masses, uniform arcs and
/// a multiple of Lebesgue measure. This is the exact form of the occupation
/// measure of a circle path whose segments are constant or move at constant
/// speed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CircleMeasure {
    pub atoms: Vec<(f64, f64)>,
    pub arcs: Vec<CircleArc>,
    pub uniform: f64,
}

impl CircleMeasure {
    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Self {
        CircleMeasure {
            atoms,
            ..Default::default()
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum::<f64>()
            + self.arcs.iter().map(|a| a.weight).sum::<f64>()
            + self.uniform
    }

    fn push_moving(&mut self, x: f64, velocity: f64, duration: f64, scale: f64) {
        let length = velocity.abs() * duration;
        let weight = duration * scale;
        if length == 0.0 {
            self.atoms.push((x, weight));
            return;
        }
        let wraps = length.floor();
        self.uniform += weight * wraps / length;
        let rem = length - wraps;
        if rem > 0.0 {
            let start = if velocity > 0.0 { x } else { frac(x - rem) };
            self.arcs.push(CircleArc {
                start,
                length: rem,
                weight: weight * rem / length,
            });
        }
    }

    /// `F(x) = mu([0, x))`.
    pub fn cdf(&self, x: f64) -> f64 {
        let mut f = self.uniform * x;
        for &(p, w) in &self.atoms {
            if p < x {
                f += w;
            }
        }
        for arc in &self.arcs {
            let density = arc.weight / arc.length;
            let end = arc.start + arc.length;
            let covered = overlap(arc.start, end, 0.0, x) + overlap(arc.start - 1.0, end - 1.0, 0.0, x);
            f += density * covered;
        }
        f
    }
}

fn overlap(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (a1.min(b1) - a0.max(b0)).max(0.0)
}

/// Exact time-weighted occupation measure of a path on `T^1`.
pub fn circle_measure<P: SamplePath + ?Sized>(path: &P) -> Result<CircleMeasure> {
    if path.group().torus_dim() != Some(1) {
        return Err(Error::FamilyMismatch {
            expected: "one-dimensional torus".into(),
            got: path.group().family_name().into(),
        });
    }
    let scale = 1.0 / path.horizon();
    let mut m = CircleMeasure::default();
    path.for_each_segment(&mut |seg| {
        let x = seg.point.as_circle().unwrap_or(0.0);
        m.push_moving(x, seg.velocity, seg.duration, scale);
    });
    Ok(m)
}

/// Fraction of `[0, T]` a path on `T^1` spends in `[lo, hi)`, `0 <= lo <= hi <= 1`,
/// computed segment by segment without storing the measure.
pub fn interval_mass<P: SamplePath + ?Sized>(path: &P, lo: f64, hi: f64) -> Result<f64> {
    if path.group().torus_dim() != Some(1) {
        return Err(Error::FamilyMismatch {
            expected: "one-dimensional torus".into(),
            got: path.group().family_name().into(),
        });
    }
    if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
        return Err(Error::InvalidParameter(format!("[{lo}, {hi}) is not a subinterval of [0, 1)")));
    }
    let mut time = 0.0;
    path.for_each_segment(&mut |seg| {
        let x = seg.point.as_circle().unwrap_or(0.0);
        let length = seg.velocity.abs() * seg.duration;
        if length == 0.0 {
            if lo <= x && x < hi {
                time += seg.duration;
            }
            return;
        }
        let wraps = length.floor();
        let rem = length - wraps;
        let start = if seg.velocity > 0.0 { x } else { frac(x - rem) };
        let covered = wraps * (hi - lo)
            + overlap(start, start + rem, lo, hi)
            + overlap(start - 1.0, start + rem - 1.0, lo, hi);
        time += seg.duration * covered / length;
    });
    Ok(time / path.horizon())
}

/// Occupation measure of one coordinate of a path on `T^d`.
pub fn marginal_circle_measure<P: SamplePath + ?Sized>(path: &P, coord: usize) -> Result<CircleMeasure> {
    let dim = path.group().torus_dim().ok_or_else(|| Error::FamilyMismatch {
        expected: "torus".into(),
        got: path.group().family_name().into(),
    })?;
    if coord >= dim {
        return Err(Error::InvalidParameter(format!("coordinate {coord} of a {dim}-torus")));
    }
    if dim == 1 {
        return circle_measure(path);
    }
    let scale = 1.0 / path.horizon();
    let mut m = CircleMeasure::default();
    path.for_each_segment(&mut |seg| {
        if let crate::group::GroupPoint::Torus(c) = &seg.point {
            m.atoms.push((c[coord], seg.duration * scale));
        }
    });
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moving_mass_is_conserved() {
        let mut m = CircleMeasure::default();
        m.push_moving(0.9, 0.3, 7.0, 0.1);
        m.push_moving(0.2, -0.05, 3.0, 0.1);
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
        assert!((m.cdf(1.0) - 1.0).abs() < 1e-12);
        assert_eq!(m.cdf(0.0), 0.0);
    }

    #[test]
    fn wrapped_arc_cdf() {
        // arc [0.8, 1.2) of mass 1
        let m = CircleMeasure {
            atoms: vec![],
            arcs: vec![CircleArc { start: 0.8, length: 0.4, weight: 1.0 }],
            uniform: 0.0,
        };
        assert!((m.cdf(0.2) - 0.5).abs() < 1e-12);
        assert!((m.cdf(0.5) - 0.5).abs() < 1e-12);
        assert!((m.cdf(0.9) - 0.75).abs() < 1e-12);
    }
}
