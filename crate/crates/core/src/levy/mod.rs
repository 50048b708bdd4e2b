//! Simulation of Levy processes.
//!
//! * On the real line from a characteristic triple (drift, Brownian part and
//!   a finite atomic jump measure), with projection to the circle and the
//!   geometric transform `a exp(c Y_t + d t)`.
//! * On any supported compact group as a compound-Poisson product of i.i.d.
//!   steps, and in discrete time as partial products.
//!
//! Every simulation is a pure function of its inputs and a 64-bit seed.

mod export;
mod grid;
mod jump;
mod real;
mod triple;

pub use export::{write_grid_csv, write_jump_csv, write_real_path_csv, write_torus_path_csv};
pub use grid::{grid_len, GridPath};
pub use jump::{partial_products, simulate_jump_levy_group, JumpPath, StepDistribution};
pub use real::{
    geometric_transform, log_significand, project_to_torus, simulate_real_levy, simulate_real_levy_from,
    GeometricPath, RealLevyPath, RealSegment, TorusLevyPath, DEFAULT_DT,
};
pub use triple::{Atom, LevyTriple, RationalAtom, RationalTriple};
