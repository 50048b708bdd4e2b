use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{frac, CompactGroup, GroupFamily, GroupPoint};

/// How a group is cut into histogram bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Partition {
    /// `bins` equal cells per torus coordinate; cell `i` of a coordinate is
    /// `[offset + i/bins, offset + (i+1)/bins)` mod 1. Cells of `T^d` are
    /// numbered with the first coordinate varying fastest.
    Torus { dim: usize, bins: usize, offset: f64 },
    /// One cell per element.
    Finite { order: usize },
    /// `bins` equal cells of the rotation angle on `[0, pi]`.
    RotationAngle { bins: usize },
}

/// Upper bound on the number of cells of a torus partition.
const MAX_CELLS: usize = 10_000_000;

impl Partition {
    /// Standard partition of a group with `bins` cells per dimension (ignored
    /// for finite groups).
    pub fn for_group(group: &CompactGroup, bins: usize) -> Result<Self> {
        if bins < 1 {
            return Err(Error::InvalidPartition("bin count must be >= 1".into()));
        }
        let p = match group.family() {
            GroupFamily::Torus(t) => Partition::Torus {
                dim: t.dim,
                bins,
                offset: 0.0,
            },
            GroupFamily::Finite(t) => Partition::Finite { order: t.order() },
            GroupFamily::Rotation3D => Partition::RotationAngle { bins },
        };
        p.validate()?;
        Ok(p)
    }

    /// Torus partition whose cells are centred on the points `i / bins`.
    pub fn centered_torus(dim: usize, bins: usize) -> Result<Self> {
        if bins < 1 {
            return Err(Error::InvalidPartition("bin count must be >= 1".into()));
        }
        let p = Partition::Torus {
            dim,
            bins,
            offset: -0.5 / bins as f64,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Partition::Torus { dim, bins, offset } => {
                if bins < 1 || dim < 1 {
                    return Err(Error::InvalidPartition("bin count and dimension must be >= 1".into()));
                }
                if !offset.is_finite() {
                    return Err(Error::InvalidPartition("offset must be finite".into()));
                }
                let cells = (bins as f64).powi(dim as i32);
                if cells > MAX_CELLS as f64 {
                    return Err(Error::InvalidPartition(format!("{cells} cells exceed the limit of {MAX_CELLS}")));
                }
                Ok(())
            }
            Partition::Finite { order } if order >= 1 => Ok(()),
            Partition::RotationAngle { bins } if bins >= 1 => Ok(()),
            _ => Err(Error::InvalidPartition("bin count must be >= 1".into())),
        }
    }

    pub fn check_group(&self, group: &CompactGroup) -> Result<()> {
        let ok = match (self, group.family()) {
            (Partition::Torus { dim, .. }, GroupFamily::Torus(t)) => *dim == t.dim,
            (Partition::Finite { order }, GroupFamily::Finite(t)) => *order == t.order(),
            (Partition::RotationAngle { .. }, GroupFamily::Rotation3D) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!(
                "{self:?} does not fit the {} group",
                group.family_name()
            )))
        }
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        match *self {
            Partition::Torus { dim, bins, .. } => bins.pow(dim as u32),
            Partition::Finite { order } => order,
            Partition::RotationAngle { bins } => bins,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cell index of a single torus coordinate.
    pub fn torus_cell(bins: usize, offset: f64, x: f64) -> usize {
        let u = frac(x - offset);
        ((u * bins as f64) as usize).min(bins - 1)
    }

    pub fn bin_of(&self, point: &GroupPoint) -> Result<usize> {
        match (self, point) {
            (Partition::Torus { dim, bins, offset }, GroupPoint::Torus(c)) if c.len() == *dim => {
                let mut index = 0usize;
                for x in c.iter().rev() {
                    index = index * bins + Self::torus_cell(*bins, *offset, *x);
                }
                Ok(index)
            }
            (Partition::Finite { order }, GroupPoint::Element(i)) if i < order => Ok(*i),
            (Partition::RotationAngle { bins }, GroupPoint::Rotation(q)) => {
                Ok(((q.angle() / PI * *bins as f64) as usize).min(bins - 1))
            }
            _ => Err(Error::InvalidPartition(format!("point {point} does not fit {self:?}"))),
        }
    }

    /// Haar mass of each cell. The rotation-angle reference is the Haar
    /// density `(1 - cos theta) / pi` of the rotation angle.
    pub fn haar_masses(&self) -> Vec<f64> {
        match *self {
            Partition::RotationAngle { bins } => {
                let edge = |i: usize| {
                    let t = PI * i as f64 / bins as f64;
                    (t - t.sin()) / PI
                };
                (0..bins).map(|i| edge(i + 1) - edge(i)).collect()
            }
            _ => {
                let n = self.len();
                vec![1.0 / n as f64; n]
            }
        }
    }

    /// Human-readable cell label for CSV output.
    pub fn label(&self, index: usize, group: &CompactGroup) -> String {
        match *self {
            Partition::Torus { dim, bins, offset } => {
                let w = 1.0 / bins as f64;
                let mut rem = index;
                let parts: Vec<String> = (0..dim)
                    .map(|_| {
                        let i = rem % bins;
                        rem /= bins;
                        let lo = offset + i as f64 * w;
                        format!("[{:.6},{:.6})", lo, lo + w)
                    })
                    .collect();
                parts.join("x")
            }
            Partition::Finite { .. } => group
                .finite_table()
                .map(|t| t.label(index).to_string())
                .unwrap_or_else(|| index.to_string()),
            Partition::RotationAngle { bins } => {
                let w = PI / bins as f64;
                format!("[{:.6},{:.6})", index as f64 * w, (index + 1) as f64 * w)
            }
        }
    }
}
