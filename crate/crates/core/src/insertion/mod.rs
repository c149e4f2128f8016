//! Model-generic insertion constructions: merging a countable meet with a
//! countable join, joining scaled separating functions, iterating a strict
//! insertion oracle, and increasing approximation from error-bounded
//! approximants.

mod approx;
mod dieudonne;
mod tong;
mod urysohn;

pub use approx::{approx_rates, increasing_approx};
pub use dieudonne::{
    dieudonne_iterate, step_bounds, IterationTrace, LowerOracle, MidpointOracle,
    StrictInsertionOracle,
};
pub use tong::{tong_merge, MergeTrace};
pub use urysohn::{rational_grid, urysohn_join_stream, UrysohnCarrier, UrysohnJoin};
