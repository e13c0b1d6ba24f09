//! Closed-form upper bound on the minimum number of slots, and the
//! visit-and-hover plan that certifies it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::real::Real;
use crate::scenario::{Association, Scenario, Trajectory};

/// Hard cap on constructed plan length; only reached on absurd inputs.
const MAX_CONSTRUCTED_SLOTS: usize = 10_000_000;

/// The two summands of the slot bound before the ceiling is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundTerms {
    /// Smallest squared user-to-Eve horizontal distance.
    pub delta_e: f64,
    /// Worst-case overhead secrecy rate, bits/s/Hz.
    pub log_term: f64,
    /// Slots needed to push `sK` bits at `log_term`.
    pub demand_slots: f64,
    /// Slots needed to fly the tour at full speed.
    pub travel_slots: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct FeasibilityBound<T> {
    pub n_max: usize,
    pub trajectory: Trajectory<T>,
    pub association: Association<T>,
}

/// Secrecy rate obtained hovering straight above a user whose squared
/// horizontal distance to Eve is `delta_e`:
/// `log2[(z²+ρ₀)(z²+δ_e) / (z²(z²+ρ₀+δ_e))]`.
pub fn overhead_secrecy_log_term<T: Real>(scn: &Scenario<T>, delta_e: T) -> T {
    scn.rate_at_sq_distance(T::zero()) - scn.rate_at_sq_distance(delta_e)
}

pub fn bound_terms<T: Real>(scn: &Scenario<T>) -> Result<BoundTerms> {
    scn.validate()?;
    let delta_e = scn
        .user_positions
        .iter()
        .map(|&u| u.dist_sq(scn.eve_position))
        .fold(T::infinity(), T::min);
    let log_term = overhead_secrecy_log_term(scn, delta_e);
    if !(log_term > T::zero()) {
        return Err(Error::DegenerateGeometry(format!(
            "eavesdropper co-located with a user (min squared distance {delta_e})"
        )));
    }
    let k = T::from_usize_lossy(scn.num_users());
    let demand = scn.content_bits * k / (scn.bits_per_slot_unit() * log_term);
    let travel = scn.tour_length() / scn.max_step();
    Ok(BoundTerms {
        delta_e: delta_e.to_f64_lossy(),
        log_term: log_term.to_f64_lossy(),
        demand_slots: demand.to_f64_lossy(),
        travel_slots: travel.to_f64_lossy(),
    })
}

/// Upper bound on the optimal slot count:
/// `⌈ sK / (B₀τ·log_term) + tour / (v_max τ) ⌉`, at least one slot.
pub fn prop1_bound<T: Real>(scn: &Scenario<T>) -> Result<usize> {
    let t = bound_terms(scn)?;
    Ok(ceil_slots(t.demand_slots + t.travel_slots).max(1))
}

/// `⌈tour / (v_max τ)⌉`, the default lower end of the bisection bracket.
pub fn travel_lower_bound<T: Real>(scn: &Scenario<T>) -> Result<usize> {
    scn.validate()?;
    Ok(ceil_slots((scn.tour_length() / scn.max_step()).to_f64_lossy()).max(1))
}

/// Ceiling that ignores float noise just above an integer.
fn ceil_slots(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// Bound plus the explicit plan that achieves it.
pub fn feasibility_bound<T: Real>(scn: &Scenario<T>) -> Result<FeasibilityBound<T>> {
    let n_max = prop1_bound(scn)?;
    let (trajectory, association) = hover_witness(scn, n_max)?;
    Ok(FeasibilityBound {
        n_max,
        trajectory,
        association,
    })
}

/// How a visit-and-hover tour uses the slots spent flying between users.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitPolicy {
    /// Transmit only while parked above the served user.
    Idle,
    /// Also transmit to the next unserved user whenever its secrecy rate
    /// at the current waypoint is positive.
    Opportunistic,
}

/// Visits users in scenario order at full speed, serves each one until its
/// content is delivered, then flies straight back to the start. Returns
/// the plan at its natural length.
pub fn hover_tour<T: Real>(
    scn: &Scenario<T>,
    policy: TransitPolicy,
) -> Result<(Trajectory<T>, Association<T>)> {
    scn.validate()?;
    let k_users = scn.num_users();
    for k in 0..k_users {
        if !(scn.secrecy_rate(scn.user(k), k) > T::zero()) {
            return Err(Error::NeverCompletes { user: k });
        }
    }
    let unit = scn.bits_per_slot_unit();
    let done = |acc: T| unit * acc >= scn.content_bits;
    let step = scn.max_step();

    let mut acc = vec![T::zero(); k_users];
    let mut served: Vec<Option<usize>> = Vec::new();
    let mut waypoints = Vec::new();
    let mut pos = scn.uav_start;
    let mut target = 0;
    loop {
        if waypoints.len() >= MAX_CONSTRUCTED_SLOTS {
            return Err(Error::NumericalFailure(
                "hover construction did not terminate".into(),
            ));
        }
        waypoints.push(pos);
        while target < k_users && done(acc[target]) {
            target += 1;
        }
        let mut slot_user = None;
        if target < k_users {
            let overhead = pos == scn.user(target);
            let rate = scn.secrecy_rate(pos, target);
            let transmit = match policy {
                TransitPolicy::Idle => overhead,
                TransitPolicy::Opportunistic => rate > T::zero(),
            };
            if transmit {
                acc[target] = acc[target] + rate;
                slot_user = Some(target);
            }
        }
        served.push(slot_user);
        while target < k_users && done(acc[target]) {
            target += 1;
        }
        let goal = if target < k_users {
            scn.user(target)
        } else if pos == scn.uav_start {
            break;
        } else {
            scn.uav_start
        };
        pos = step_towards(pos, goal, step);
    }

    let mut assoc = Association::zeros(k_users, waypoints.len());
    for (n, user) in served.into_iter().enumerate() {
        if let Some(k) = user {
            assoc[(k, n)] = T::one();
        }
    }
    Ok((Trajectory::new(waypoints), assoc))
}

fn step_towards<T: Real>(from: Point2<T>, to: Point2<T>, step: T) -> Point2<T> {
    let d = from.dist(to);
    if d <= step {
        to
    } else {
        from + (to - from) * (step / d)
    }
}

/// Extends a plan that ends at the start point with idle slots parked there.
pub fn pad_plan<T: Real>(
    traj: &Trajectory<T>,
    assoc: &Association<T>,
    slots: usize,
) -> (Trajectory<T>, Association<T>) {
    let n0 = traj.len();
    let last = traj
        .waypoints
        .last()
        .copied()
        .unwrap_or_else(Point2::origin);
    let mut waypoints = traj.waypoints.clone();
    waypoints.resize(slots.max(n0), last);
    let k = assoc.num_users();
    let mut padded = Association::zeros(k, waypoints.len());
    for i in 0..k {
        for n in 0..n0 {
            padded[(i, n)] = assoc[(i, n)];
        }
    }
    (Trajectory::new(waypoints), padded)
}

/// Feasible plan with exactly `n` slots: the opportunistic hover tour padded
/// with idle slots at the start point.
pub fn hover_witness<T: Real>(scn: &Scenario<T>, n: usize) -> Result<(Trajectory<T>, Association<T>)> {
    let (traj, assoc) = hover_tour(scn, TransitPolicy::Opportunistic)?;
    if traj.len() > n {
        return Err(Error::InfeasibleHorizon {
            slots: n,
            needed: traj.len(),
        });
    }
    Ok(pad_plan(&traj, &assoc, n))
}
