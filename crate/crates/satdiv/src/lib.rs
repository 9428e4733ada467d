//! Exact solvers for satisfactory budget division.
//!
//! A unit budget is split over `m` projects. Each agent reports per-project
//! demands summing to at most 1 and is satisfied by a division when at least
//! `tau` of her demands are met. The crate provides the data model, exact
//! decision and optimization procedures over the reduced candidate grid,
//! closed-form and constructive satisfiers, the named worst-case instance
//! families, graph-reduction generators, and a self-contained verification
//! suite. All arithmetic is exact rational arithmetic.

pub mod constructive;
pub mod families;
pub mod io;
pub mod model;
pub mod rational;
pub mod reductions;
pub mod report;
pub mod solvers;
pub mod verify;

pub use model::{Instance, ModelError, SatisfactionReport, Solution, ThresholdSpec, Tightness};
pub use rational::{parse_rational, Q};
