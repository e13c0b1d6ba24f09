//! Non-optimized comparison schemes: visit-and-hover, a fixed circular
//! orbit with greedy scheduling, and the continuous relaxation.

use std::time::Instant;

use crate::bounds::{hover_tour, TransitPolicy};
use crate::error::Result;
use crate::geometry::Point2;
use crate::planner::{circle_through_start, solve_cr, PlanResult, Scheme, SolverOptions};
use crate::real::Real;
use crate::scenario::{Association, Scenario};

/// Straight legs at full speed through the users in order, hovering above
/// each one until its content is delivered, then back to the start.
pub fn hover_baseline<T: Real>(scn: &Scenario<T>) -> Result<PlanResult<T>> {
    let started = Instant::now();
    let (traj, assoc) = hover_tour(scn, TransitPolicy::Idle)?;
    PlanResult::assemble(scn, Scheme::Hover, traj, assoc, started)
}

/// Speed-feasible circle through the start point centred on the users'
/// centroid, with each slot given to the unmet user of highest positive
/// secrecy rate. The plan may leave demand unmet; `complete` says so.
pub fn circular_baseline<T: Real>(scn: &Scenario<T>, n: usize) -> Result<PlanResult<T>> {
    let started = Instant::now();
    scn.validate()?;
    let k_users = scn.num_users();
    let centroid = scn
        .user_positions
        .iter()
        .fold(Point2::origin(), |acc, &p| acc + p)
        * (T::one() / T::from_usize_lossy(k_users));
    let traj = circle_through_start(scn, centroid, n);
    let unit = scn.bits_per_slot_unit();
    let mut bits = vec![T::zero(); k_users];
    let mut assoc = Association::zeros(k_users, n);
    for (slot, &r) in traj.iter().enumerate() {
        let mut best: Option<(usize, T)> = None;
        for (k, &b) in bits.iter().enumerate() {
            if b >= scn.content_bits {
                continue;
            }
            let rate = scn.secrecy_rate(r, k);
            if rate > T::zero() && best.is_none_or(|(_, top)| rate > top) {
                best = Some((k, rate));
            }
        }
        if let Some((k, rate)) = best {
            assoc[(k, slot)] = T::one();
            bits[k] = bits[k] + unit * rate;
        }
    }
    PlanResult::assemble(scn, Scheme::Circular, traj, assoc, started)
}

/// Continuous relaxation at a fixed horizon. The association stays
/// fractional and is read as sub-slot time shares, so `complete` ignores
/// binarity and checks only delivery and motion constraints.
pub fn continuous_relaxation<T: Real>(
    scn: &Scenario<T>,
    n: usize,
    opts: &SolverOptions<T>,
) -> Result<PlanResult<T>> {
    let started = Instant::now();
    let out = solve_cr(scn, n, opts)?;
    let mut plan = PlanResult::assemble(
        scn,
        Scheme::ContinuousRelaxation,
        out.trajectory,
        out.association,
        started,
    )?;
    let r = &plan.report;
    plan.complete = r.shortfall_users.is_empty()
        && r.speed_violations.is_empty()
        && r.boundary_violations.is_empty()
        && r.column_violations.is_empty();
    plan.omega = Some(T::zero());
    plan.trace = out.trace;
    plan.wall_time_s = started.elapsed().as_secs_f64();
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::prop1_bound;

    #[test]
    fn hover_baseline_single_user_below_start() {
        let mut s = Scenario::<f64>::evaluation_default();
        s.user_positions = vec![s.uav_start];
        let plan = hover_baseline(&s).unwrap();
        let rate = s.secrecy_rate(s.uav_start, 0);
        let expected = (s.content_bits / (s.bits_per_slot_unit() * rate)).ceil() as usize;
        assert_eq!(plan.n_star, expected);
        assert!(plan.complete);
    }

    #[test]
    fn hover_baseline_validates_on_evaluation_scenario() {
        let s = Scenario::<f64>::evaluation_default();
        let plan = hover_baseline(&s).unwrap();
        assert!(plan.complete);
        assert!(plan.n_star >= prop1_bound(&s).unwrap().min(plan.n_star));
        assert!(plan.delivered_bits.iter().all(|&b| b >= s.content_bits));
    }

    #[test]
    fn circular_baseline_keeps_requested_length() {
        let s = Scenario::<f64>::evaluation_default();
        let n = prop1_bound(&s).unwrap();
        let plan = circular_baseline(&s, n).unwrap();
        assert_eq!(plan.n_star, n);
        assert!(plan.report.speed_violations.is_empty());
        assert!(plan.report.column_violations.is_empty());
        assert!(plan.association.is_binary(0.0));
    }

    #[test]
    fn circular_baseline_parks_when_centroid_is_start() {
        let mut s = Scenario::<f64>::evaluation_default();
        s.uav_start = Point2::new(400.0, 0.0);
        let plan = circular_baseline(&s, 12).unwrap();
        assert!(plan.trajectory.iter().all(|&p| p == s.uav_start));
    }
}
