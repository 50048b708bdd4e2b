//! Lévy processes and random walks on compact groups: simulation, exact
//! occupation measures, uniformity statistics, and an exact classifier
//! deciding when paths are continuously uniformly distributed (c.u.d.).
//!
//! Supported groups are the tori `T^d`, finite groups given by a
//! multiplication table, and `SO(3)`. Randomness comes from ChaCha8
//! (`rand_chacha::ChaCha8Rng`) seeded from a single `u64`, with separate
//! streams for jump times, Brownian increments and discrete steps, so every
//! output is a pure function of its configuration and seed.

pub mod almost_periodic;
pub mod classifier;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod group;
pub mod levy;
pub mod occupation;
pub mod path;
pub mod rng;
pub mod uniformity;

pub use error::{Error, Result};
pub use exact::ExactReal;
pub use group::{CharacterIndex, CompactGroup, FiniteTable, GroupPoint, Quaternion};
pub use levy::{GridPath, JumpPath, LevyTriple, RationalTriple, RealLevyPath};
pub use occupation::{CharacterSeries, OccupationMeasure, Partition};
pub use path::SamplePath;
pub use uniformity::TestReport;
