//! Writers for `report.json`, `occupation.csv` and `series.csv`.
//!
//! Every CSV starts with a `# seed=<seed> horizon=<T>` comment line,
//! followed by a header row. Masses and series values use scientific
//! notation with 12 significant digits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;
use crate::group::CompactGroup;
use crate::occupation::{CharacterSeries, OccupationMeasure};

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn write_occupation_csv<W: Write>(
    out: &mut W,
    occ: &OccupationMeasure,
    group: &CompactGroup,
    seed: u64,
) -> Result<()> {
    writeln!(out, "# seed={seed} horizon={:.9}", occ.total_time)?;
    writeln!(out, "bin_index,bin_label,mass")?;
    for (i, m) in occ.masses.iter().enumerate() {
        writeln!(out, "{i},{},{m:.11e}", quote(&occ.partition.label(i, group)))?;
    }
    Ok(())
}

/// `k,T,re,im,abs`, one row per character and checkpoint. `labels` names
/// the characters (defaults to the character index).
pub fn write_series_csv<W: Write>(
    out: &mut W,
    series: &[CharacterSeries],
    labels: Option<&[String]>,
    seed: u64,
    horizon: f64,
) -> Result<()> {
    writeln!(out, "# seed={seed} horizon={horizon:.9}")?;
    writeln!(out, "k,T,re,im,abs")?;
    for (j, s) in series.iter().enumerate() {
        let label = match labels {
            Some(l) => l[j].clone(),
            None => s.k.to_string(),
        };
        let label = quote(&label);
        for (t, v) in s.checkpoints.iter().zip(&s.values) {
            writeln!(out, "{label},{t:.11e},{:.11e},{:.11e},{:.11e}", v.re, v.im, v.norm())?;
        }
    }
    Ok(())
}

pub fn save_occupation(path: &Path, occ: &OccupationMeasure, group: &CompactGroup, seed: u64) -> Result<()> {
    let mut f = create(path)?;
    write_occupation_csv(&mut f, occ, group, seed)?;
    f.flush()?;
    Ok(())
}

pub fn save_series(
    path: &Path,
    series: &[CharacterSeries],
    labels: Option<&[String]>,
    seed: u64,
    horizon: f64,
) -> Result<()> {
    let mut f = create(path)?;
    write_series_csv(&mut f, series, labels, seed, horizon)?;
    f.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline; key order is insertion order.
pub fn save_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    f.flush()?;
    Ok(())
}

pub fn save_with<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    let mut f = create(path)?;
    write(&mut f)?;
    f.flush()?;
    Ok(())
}
