//! Minimum-latency secure content delivery from a single UAV to ground
//! users in the presence of a known eavesdropper.
//!
//! The planner bisects over the number of time slots; each probe solves a
//! fixed-horizon max-min secrecy problem with a block-coordinate penalty
//! method whose convex steps run on a dense log-barrier solver. Everything
//! is generic over the scalar type; `f64` aliases are re-exported below.

// `!(x > 0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod barrier;
pub mod baselines;
pub mod bounds;
pub mod convex_solver;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod planner;
pub mod real;
pub mod scenario;
pub mod validate;

pub use baselines::{circular_baseline, continuous_relaxation, hover_baseline};
pub use bounds::{hover_witness, prop1_bound, travel_lower_bound};
pub use error::{Error, Result};
pub use geometry::Point2;
pub use matrix::Matrix;
pub use planner::{
    feasible_for, minimize_latency, solve_cr, solve_p1, PlanResult, Scheme, SolverOptions, TraceEntry,
};
pub use real::Real;
pub use scenario::{Association, Scenario, Trajectory};
pub use validate::{check_plan, PlanReport};

pub type Scenario64 = Scenario<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type Association64 = Association<f64>;
pub type PlanResult64 = PlanResult<f64>;
pub type SolverOptions64 = SolverOptions<f64>;
pub type Scenario32 = Scenario<f32>;
pub type Trajectory32 = Trajectory<f32>;
pub type Association32 = Association<f32>;
