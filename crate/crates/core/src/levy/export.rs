//! CSV export of paths: `t,value` for grid samples, `jump_time,state` for
//! jump ledgers. Times are fixed-point with 9 decimals. The first line is a
//! `#` comment recording the seed and horizon.

use std::fmt::Display;
use std::io::Write;

use crate::error::Result;
use crate::path::SamplePath;

use super::{GridPath, JumpPath, RealLevyPath, TorusLevyPath};

fn preamble<W: Write>(out: &mut W, seed: u64, horizon: f64, extra: &str) -> Result<()> {
    writeln!(out, "# seed={seed} horizon={horizon:.9}{extra}")?;
    Ok(())
}

pub fn write_grid_csv<W: Write, T: Display>(out: &mut W, grid: &GridPath<T>, seed: u64) -> Result<()> {
    preamble(out, seed, grid.horizon(), &format!(" dt={:.9}", grid.dt()))?;
    writeln!(out, "t,value")?;
    for (i, v) in grid.values().iter().enumerate() {
        writeln!(out, "{:.9},{}", grid.time(i), v)?;
    }
    Ok(())
}

pub fn write_jump_csv<W: Write>(out: &mut W, path: &JumpPath, seed: u64) -> Result<()> {
    preamble(out, seed, path.horizon(), &format!(" initial={}", path.initial()))?;
    writeln!(out, "jump_time,state")?;
    for (t, s) in path.jump_times().iter().zip(path.states()) {
        writeln!(out, "{t:.9},{s}")?;
    }
    Ok(())
}

/// Exact paths are written as their jump ledger with post-jump values; grid
/// paths as `t,value` at the path's own grid step.
pub fn write_real_path_csv<W: Write>(out: &mut W, path: &RealLevyPath) -> Result<()> {
    match path.dt() {
        Some(dt) => {
            let grid = path.to_grid(dt)?;
            write_grid_csv(out, &grid.map(|v| format!("{v:.12e}")), path.seed())
        }
        None => {
            preamble(
                out,
                path.seed(),
                path.horizon(),
                &format!(" initial={:.12e} drift={:.12e}", path.initial(), path.drift()),
            )?;
            writeln!(out, "jump_time,state")?;
            for &t in path.jump_times() {
                writeln!(out, "{t:.9},{:.12e}", path.value_at(t)?)?;
            }
            Ok(())
        }
    }
}

pub fn write_torus_path_csv<W: Write>(out: &mut W, path: &TorusLevyPath) -> Result<()> {
    let base = path.base();
    match base.dt() {
        Some(dt) => {
            let grid = path.sample_grid(dt)?;
            write_grid_csv(out, &grid, base.seed())
        }
        None => {
            preamble(out, base.seed(), base.horizon(), &format!(" initial={}", path.value_at(0.0)?))?;
            writeln!(out, "jump_time,state")?;
            for &t in base.jump_times() {
                writeln!(out, "{t:.9},{}", path.value_at(t)?)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CompactGroup, GroupPoint};

    #[test]
    fn jump_csv_layout() {
        let g = CompactGroup::circle();
        let p = JumpPath::new(
            g,
            GroupPoint::circle(0.0),
            2.0,
            vec![1.0],
            vec![GroupPoint::circle(0.5)],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_jump_csv(&mut buf, &p, 42).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# seed=42"));
        assert_eq!(lines[1], "jump_time,state");
        assert_eq!(lines[2], "1.000000000,5.000000000000e-1");
    }

    #[test]
    fn grid_csv_layout() {
        let grid = GridPath::new(0.5, 1.0, vec![1, 2, 3]).unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&mut buf, &grid, 7).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("t,value\n0.000000000,1\n0.500000000,2\n1.000000000,3\n"));
    }
}
