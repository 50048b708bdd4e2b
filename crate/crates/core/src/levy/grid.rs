use crate::error::{Error, Result};

/// Number of points `0, dt, ..., floor(T/dt) dt` on a uniform grid over `[0, T]`.
pub fn grid_len(horizon: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("grid step {dt} must be positive")));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} must be positive")));
    }
    // tolerate T/dt landing a hair below an integer
    let steps = (horizon / dt * (1.0 + 1e-12)).floor();
    if steps > 1e10 {
        return Err(Error::InvalidParameter(format!("grid with {steps} steps is too large")));
    }
    Ok(steps as usize + 1)
}

/// Values of a path at `t = 0, dt, 2 dt, ...` up to the horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPath<T> {
    dt: f64,
    horizon: f64,
    values: Vec<T>,
}

impl<T> GridPath<T> {
    pub fn new(dt: f64, horizon: f64, values: Vec<T>) -> Result<Self> {
        let n = grid_len(horizon, dt)?;
        if values.len() != n {
            return Err(Error::LengthMismatch(format!(
                "grid over [0, {horizon}] with step {dt} needs {n} values, got {}",
                values.len()
            )));
        }
        Ok(GridPath { dt, horizon, values })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }

    /// Left-endpoint quadrature weights: `dt` for every cell, with the last
    /// grid point carrying the remainder `T - (n-1) dt` (zero when `dt`
    /// divides `T`).
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.values.len();
        let tail = (self.horizon - (n - 1) as f64 * self.dt).max(0.0);
        let tail = if tail <= self.dt * 1e-9 { 0.0 } else { tail };
        (0..n).map(move |i| if i + 1 < n { self.dt } else { tail })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> GridPath<U> {
        GridPath {
            dt: self.dt,
            horizon: self.horizon,
            values: self.values.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(grid_len(1.0, 0.1).unwrap(), 11);
        assert_eq!(grid_len(10.0, 1e-3).unwrap(), 10001);
        assert_eq!(grid_len(1.05, 0.1).unwrap(), 11);
        assert!(grid_len(1.0, 0.0).is_err());
        assert!(grid_len(0.0, 0.1).is_err());
    }

    #[test]
    fn weights_sum_to_horizon() {
        let g = GridPath::new(0.1, 1.05, vec![0.0; 11]).unwrap();
        let total: f64 = g.weights().sum();
        assert!((total - 1.05).abs() < 1e-12);
        let g = GridPath::new(0.25, 1.0, vec![0.0; 5]).unwrap();
        assert_eq!(g.weights().last(), Some(0.0));
    }

    #[test]
    fn length_is_checked() {
        assert!(GridPath::new(0.5, 1.0, vec![1.0, 2.0]).is_err());
    }
}
