//! Ground-truth checks of a plan against the original latency problem, and
//! an exhaustive association oracle for small instances.
//!
//! Everything here recomputes rates from the scenario directly and never
//! reads values cached by the planner.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::real::Real;
use crate::scenario::{Association, Scenario, Trajectory, EPS_BIN, EPS_FEAS};

/// Largest `(K + 1)^N` accepted by [`brute_force_association`].
pub const BRUTE_FORCE_LIMIT: u128 = 6561;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct SpeedViolation<T> {
    /// Step from slot `slot` to slot `slot + 1` (0-based).
    pub slot: usize,
    pub distance: T,
    pub limit: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct BoundaryViolation<T> {
    pub slot: usize,
    /// Distance from the start point, meters.
    pub distance: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ColumnViolation<T> {
    pub slot: usize,
    pub sum: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct PlanReport<T> {
    /// `B₀τ·Σ_n e_k[n]·[R_k[n] − R_e[n]]⁺` for every user.
    pub per_user_bits: Vec<T>,
    pub required_bits: T,
    /// Users whose delivered bits fall short of the requirement.
    pub shortfall_users: Vec<usize>,
    pub speed_violations: Vec<SpeedViolation<T>>,
    pub boundary_violations: Vec<BoundaryViolation<T>>,
    pub column_violations: Vec<ColumnViolation<T>>,
    /// `(user, slot)` entries farther than the binarity tolerance from {0, 1}.
    pub non_binary: Vec<(usize, usize)>,
    pub passed: bool,
}

fn check_shapes<T: Real>(scn: &Scenario<T>, traj: &Trajectory<T>, assoc: &Association<T>) -> Result<()> {
    if assoc.num_users() != scn.num_users() {
        return Err(Error::DimensionMismatch {
            what: "association users",
            expected: scn.num_users(),
            found: assoc.num_users(),
        });
    }
    if assoc.num_slots() != traj.len() {
        return Err(Error::DimensionMismatch {
            what: "association slots",
            expected: traj.len(),
            found: assoc.num_slots(),
        });
    }
    if traj.is_empty() {
        return Err(Error::DimensionMismatch {
            what: "trajectory length",
            expected: 1,
            found: 0,
        });
    }
    Ok(())
}

/// Secure bits per user with the association taken as time shares (no
/// binarity requirement).
pub fn delivered_bits<T: Real>(
    scn: &Scenario<T>,
    traj: &Trajectory<T>,
    assoc: &Association<T>,
) -> Result<Vec<T>> {
    check_shapes(scn, traj, assoc)?;
    let eve: Vec<T> = traj.iter().map(|&r| scn.spectral_rate_eve(r)).collect();
    Ok((0..scn.num_users())
        .map(|k| {
            let mut sum = T::zero();
            for (n, &r) in traj.iter().enumerate() {
                let e = assoc[(k, n)];
                if e != T::zero() {
                    let sec = (scn.spectral_rate_user(r, k) - eve[n]).max(T::zero());
                    sum = sum + e * sec;
                }
            }
            scn.bits_per_slot_unit() * sum
        })
        .collect())
}

/// Checks delivery, speed, endpoint, one-user-per-slot and binarity
/// constraints; `passed` is true iff every user receives its content and
/// nothing is violated.
pub fn check_plan<T: Real>(
    scn: &Scenario<T>,
    traj: &Trajectory<T>,
    assoc: &Association<T>,
) -> Result<PlanReport<T>> {
    let per_user_bits = delivered_bits(scn, traj, assoc)?;
    let eps = T::lit(EPS_FEAS);
    let limit = scn.max_step();

    let shortfall_users = per_user_bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| !(b >= scn.content_bits))
        .map(|(k, _)| k)
        .collect();

    let speed_violations = traj
        .waypoints
        .windows(2)
        .enumerate()
        .filter_map(|(n, w)| {
            let d = w[0].dist(w[1]);
            (!(d <= limit + eps)).then_some(SpeedViolation {
                slot: n,
                distance: d,
                limit,
            })
        })
        .collect();

    let last = traj.len() - 1;
    let mut boundary_violations = Vec::new();
    for slot in if last == 0 { vec![0] } else { vec![0, last] } {
        let distance = traj[slot].dist(scn.uav_start);
        if !(distance <= eps) {
            boundary_violations.push(BoundaryViolation { slot, distance });
        }
    }

    let column_violations = (0..traj.len())
        .filter_map(|n| {
            let sum = assoc.matrix().column_sum(n);
            (!(sum <= T::one() + eps)).then_some(ColumnViolation { slot: n, sum })
        })
        .collect();

    let bin_tol = T::lit(EPS_BIN);
    let mut non_binary = Vec::new();
    for k in 0..assoc.num_users() {
        for n in 0..assoc.num_slots() {
            let e = assoc[(k, n)];
            if !(e.abs() <= bin_tol || (e - T::one()).abs() <= bin_tol) {
                non_binary.push((k, n));
            }
        }
    }

    let mut report = PlanReport {
        per_user_bits,
        required_bits: scn.content_bits,
        shortfall_users,
        speed_violations,
        boundary_violations,
        column_violations,
        non_binary,
        passed: false,
    };
    report.passed = report.shortfall_users.is_empty()
        && report.speed_violations.is_empty()
        && report.boundary_violations.is_empty()
        && report.column_violations.is_empty()
        && report.non_binary.is_empty();
    Ok(report)
}

/// Best binary schedule under one objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleOptimum<T: Real> {
    pub association: Association<T>,
    pub lambda: T,
}

/// Exhaustive optima with and without the `[·]⁺` clamp on per-slot rate
/// differences.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult<T: Real> {
    pub unclamped: ScheduleOptimum<T>,
    pub clamped: ScheduleOptimum<T>,
}

/// Enumerates every per-slot choice in {idle, user 1, …, user K} for a K×N
/// matrix of rate differences.
pub fn brute_force_from_differences<T: Real>(diffs: &Matrix<T>) -> Result<BruteForceResult<T>> {
    let (users, slots) = diffs.shape();
    let base = users as u128 + 1;
    let combinations = (0..slots).try_fold(1u128, |acc, _| acc.checked_mul(base));
    let combinations = match combinations {
        Some(c) if c <= BRUTE_FORCE_LIMIT => c,
        other => {
            return Err(Error::InstanceTooLarge {
                combinations: other.unwrap_or(u128::MAX),
                limit: BRUTE_FORCE_LIMIT,
            })
        }
    };
    let mut choice = vec![0usize; slots];
    let mut best_u = (T::neg_infinity(), choice.clone());
    let mut best_c = (T::neg_infinity(), choice.clone());
    let mut sums_u = vec![T::zero(); users];
    let mut sums_c = vec![T::zero(); users];
    for code in 0..combinations {
        let mut rest = code;
        for c in choice.iter_mut() {
            *c = (rest % base) as usize;
            rest /= base;
        }
        sums_u.iter_mut().for_each(|v| *v = T::zero());
        sums_c.iter_mut().for_each(|v| *v = T::zero());
        for (n, &c) in choice.iter().enumerate() {
            if c > 0 {
                let d = diffs[(c - 1, n)];
                sums_u[c - 1] = sums_u[c - 1] + d;
                sums_c[c - 1] = sums_c[c - 1] + d.max(T::zero());
            }
        }
        let lu = sums_u.iter().copied().fold(T::infinity(), T::min);
        let lc = sums_c.iter().copied().fold(T::infinity(), T::min);
        if lu > best_u.0 {
            best_u = (lu, choice.clone());
        }
        if lc > best_c.0 {
            best_c = (lc, choice.clone());
        }
    }
    let to_assoc = |choice: &[usize]| {
        let mut a = Association::zeros(users, slots);
        for (n, &c) in choice.iter().enumerate() {
            if c > 0 {
                a[(c - 1, n)] = T::one();
            }
        }
        a
    };
    Ok(BruteForceResult {
        unclamped: ScheduleOptimum {
            association: to_assoc(&best_u.1),
            lambda: best_u.0,
        },
        clamped: ScheduleOptimum {
            association: to_assoc(&best_c.1),
            lambda: best_c.0,
        },
    })
}

/// Exhaustive association search along a fixed trajectory.
pub fn brute_force_association<T: Real>(
    scn: &Scenario<T>,
    traj: &Trajectory<T>,
) -> Result<BruteForceResult<T>> {
    brute_force_from_differences(&scn.rate_difference_matrix(traj))
}
