//! The two convex block updates.
//!
//! The trajectory step maximizes λ over waypoints with fixed association,
//! after replacing each user's rate by its concave quadratic minorant and
//! the eavesdropper's squared distance by its affine minorant. The
//! eavesdropper-distance slack is eliminated by substitution: the rate
//! constraint is increasing in the slack, so it always sits on its upper
//! bound. The association step is a linear program. Both go through the
//! log-barrier method in [`crate::barrier`].

use serde::{Deserialize, Serialize};

use crate::approx::{eve_distance_minorant, rate_minorant, AffineBound, AuxiliaryMatrix, MinorantCoeffs};
use crate::barrier::{self, BarrierOptions, BarrierProblem, SolveStatus};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::matrix::Matrix;
use crate::real::Real;
use crate::scenario::{max_min_rate, Association, Scenario, Trajectory, EPS_FEAS};

/// Tolerances shared by both subproblem solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ConvexOptions<T> {
    pub tol_feas: T,
    pub tol_opt: T,
    pub max_newton_steps: usize,
}

impl<T: Real> Default for ConvexOptions<T> {
    fn default() -> Self {
        Self {
            tol_feas: T::lit(1e-6),
            tol_opt: T::lit(1e-6),
            max_newton_steps: 2_000,
        }
    }
}

impl<T: Real> ConvexOptions<T> {
    fn barrier_options(&self) -> BarrierOptions<T> {
        BarrierOptions {
            gap_tol: self.tol_opt,
            max_newton_steps: self.max_newton_steps,
            ..BarrierOptions::default()
        }
    }
}

#[inline]
fn add_lower<T: Real>(h: &mut Matrix<T>, i: usize, j: usize, v: T) {
    let (a, b) = if i >= j { (i, j) } else { (j, i) };
    h[(a, b)] = h[(a, b)] + v;
}

/// Convexified trajectory program around an anchor trajectory.
#[derive(Debug, Clone)]
pub struct TrajectorySubproblem<'a, T: Real> {
    pub scenario: &'a Scenario<T>,
    pub association: &'a Association<T>,
    pub anchor: &'a Trajectory<T>,
    /// `minorants[k][n]`: rate minorant of user `k` at slot `n`.
    pub minorants: Vec<Vec<MinorantCoeffs<T>>>,
    pub eve_bounds: Vec<AffineBound<T>>,
}

impl<'a, T: Real> TrajectorySubproblem<'a, T> {
    pub fn new(
        scenario: &'a Scenario<T>,
        association: &'a Association<T>,
        anchor: &'a Trajectory<T>,
    ) -> Result<Self> {
        let n = anchor.len();
        if association.num_slots() != n || association.num_users() != scenario.num_users() {
            return Err(Error::DimensionMismatch {
                what: "trajectory subproblem association",
                expected: scenario.num_users() * n,
                found: association.num_users() * association.num_slots(),
            });
        }
        if n == 0 {
            return Err(Error::DimensionMismatch {
                what: "trajectory length",
                expected: 1,
                found: 0,
            });
        }
        let minorants = (0..scenario.num_users())
            .map(|k| rate_minorant(scenario, k, anchor))
            .collect();
        let eve_bounds = eve_distance_minorant(scenario.eve_position, anchor);
        Ok(Self {
            scenario,
            association,
            anchor,
            minorants,
            eve_bounds,
        })
    }

    /// Surrogate objective `min_k Σ_n e_k[n](f̲_k(r[n]) − φ(d̲_e(r[n])))`
    /// for a full trajectory.
    pub fn surrogate_lambda(&self, traj: &Trajectory<T>) -> T {
        (0..self.scenario.num_users())
            .map(|k| {
                (0..traj.len())
                    .map(|n| {
                        let e = self.association[(k, n)];
                        if e == T::zero() {
                            T::zero()
                        } else {
                            e * self.slot_value(k, n, traj[n])
                        }
                    })
                    .sum::<T>()
            })
            .fold(T::infinity(), T::min)
    }

    fn slot_value(&self, k: usize, n: usize, r: Point2<T>) -> T {
        let scn = self.scenario;
        self.minorants[k][n].eval(r - scn.user(k))
            - scn.rate_at_sq_distance(self.eve_bounds[n].eval(r))
    }
}

/// Result of a trajectory update.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ConvexSolution<T> {
    pub trajectory: Trajectory<T>,
    /// Eavesdropper squared-distance slack `d_e[n]` at the solution.
    pub eve_distance_slack: Vec<T>,
    /// Optimal value of the convexified program.
    pub surrogate_lambda: T,
    /// Exact max-min rate objective of the returned trajectory.
    pub objective: T,
    /// Largest violation of the speed and endpoint constraints, meters.
    pub max_violation: T,
    pub stationarity: T,
    pub duality_gap: T,
    pub newton_steps: usize,
    pub status: SolveStatus,
    /// True when the solver's point did not improve on the anchor and the
    /// anchor was returned instead.
    pub kept_anchor: bool,
}

/// Largest violation of the speed limit and the endpoint constraints.
pub fn trajectory_violation<T: Real>(scn: &Scenario<T>, traj: &Trajectory<T>) -> T {
    let step = scn.max_step();
    let speed = traj
        .waypoints
        .windows(2)
        .map(|w| (w[0].dist(w[1]) - step).max(T::zero()))
        .fold(T::zero(), T::max);
    let ends = match (traj.waypoints.first(), traj.waypoints.last()) {
        (Some(&a), Some(&b)) => a.dist(scn.uav_start).max(b.dist(scn.uav_start)),
        _ => T::zero(),
    };
    speed.max(ends)
}

struct TrajectoryBarrier<'s, 'a, T: Real> {
    sub: &'s TrajectorySubproblem<'a, T>,
    slots: usize,
    speed_limit_sq: T,
    /// slot weights Σ_k e_k[n] > 0
    active: Vec<bool>,
}

impl<T: Real> TrajectoryBarrier<'_, '_, T> {
    fn lambda_index(&self) -> usize {
        2 * (self.slots - 2)
    }

    fn position(&self, x: &[T], n: usize) -> Point2<T> {
        if n == 0 || n + 1 == self.slots {
            self.sub.scenario.uav_start
        } else {
            Point2::new(x[2 * (n - 1)], x[2 * (n - 1) + 1])
        }
    }

    fn free(&self, n: usize) -> Option<usize> {
        (n > 0 && n + 1 < self.slots).then(|| 2 * (n - 1))
    }

    fn rate_slack(&self, x: &[T], k: usize) -> T {
        let lambda = x[self.lambda_index()];
        let mut g = T::zero();
        for n in 0..self.slots {
            let e = self.sub.association[(k, n)];
            if e != T::zero() {
                g = g + e * self.sub.slot_value(k, n, self.position(x, n));
            }
        }
        g - lambda
    }

    fn in_domain(&self, x: &[T]) -> bool {
        let z2 = self.sub.scenario.altitude_sq();
        (0..self.slots).all(|n| {
            !self.active[n] || z2 + self.sub.eve_bounds[n].eval(self.position(x, n)) > T::zero()
        })
    }
}

impl<T: Real> BarrierProblem<T> for TrajectoryBarrier<'_, '_, T> {
    fn dim(&self) -> usize {
        2 * (self.slots - 2) + 1
    }

    fn num_inequalities(&self) -> usize {
        (self.slots - 1) + self.sub.scenario.num_users()
    }

    fn objective(&self, x: &[T]) -> T {
        -x[self.lambda_index()]
    }

    fn barrier(&self, x: &[T]) -> Option<T> {
        if x.iter().any(|v| !v.is_finite()) || !self.in_domain(x) {
            return None;
        }
        let mut b = T::zero();
        for n in 0..self.slots - 1 {
            let s = self.speed_limit_sq - self.position(x, n + 1).dist_sq(self.position(x, n));
            if !(s > T::zero()) {
                return None;
            }
            b = b - s.ln();
        }
        for k in 0..self.sub.scenario.num_users() {
            let u = self.rate_slack(x, k);
            if !(u > T::zero()) {
                return None;
            }
            b = b - u.ln();
        }
        Some(b)
    }

    fn accumulate(&self, x: &[T], t: T, grad: &mut [T], hess: &mut Matrix<T>) {
        let li = self.lambda_index();
        let two = T::lit(2.0);
        grad[li] = grad[li] - t;

        for n in 0..self.slots - 1 {
            let d = self.position(x, n + 1) - self.position(x, n);
            let inv = T::one() / (self.speed_limit_sq - d.norm_sq());
            let comps = [d.x, d.y];
            // ∇s w.r.t. r[n+1] is 2d, w.r.t. r[n] is −2d
            let blocks = [(self.free(n + 1), T::one()), (self.free(n), -T::one())];
            for &(bi, si) in &blocks {
                let Some(bi) = bi else { continue };
                for a in 0..2 {
                    grad[bi + a] = grad[bi + a] + si * two * comps[a] * inv;
                }
                for &(bj, sj) in &blocks {
                    let Some(bj) = bj else { continue };
                    for a in 0..2 {
                        for c in 0..2 {
                            if bi + a < bj + c {
                                continue;
                            }
                            let mut v = si * sj * T::lit(4.0) * comps[a] * comps[c] * inv * inv;
                            if a == c {
                                v = v + si * sj * two * inv;
                            }
                            hess[(bi + a, bj + c)] = hess[(bi + a, bj + c)] + v;
                        }
                    }
                }
            }
        }

        let scn = self.sub.scenario;
        let z2 = scn.altitude_sq();
        let rho = scn.snr_ref();
        let ln2 = T::LN_2();
        let mut du = vec![T::zero(); self.dim()];
        for k in 0..scn.num_users() {
            let u = self.rate_slack(x, k);
            du.iter_mut().for_each(|v| *v = T::zero());
            du[li] = -T::one();
            let inv_u = T::one() / u;
            for n in 1..self.slots - 1 {
                let e = self.sub.association[(k, n)];
                if e == T::zero() {
                    continue;
                }
                let bi = 2 * (n - 1);
                let r = self.position(x, n);
                let m = &self.sub.minorants[k][n];
                let bound = &self.sub.eve_bounds[n];
                let d = bound.eval(r);
                let a = z2 + d;
                let b = z2 + rho + d;
                let dphi = (T::one() / b - T::one() / a) / ln2;
                let d2phi = (T::one() / (a * a) - T::one() / (b * b)) / ln2;
                let gf = m.gradient(r - scn.user(k));
                let w = bound.gradient;
                du[bi] = e * (gf.x - dphi * w.x);
                du[bi + 1] = e * (gf.y - dphi * w.y);
                // −∇²u/u, with ∇²u = e(−2σI − φ'' w wᵀ)
                let ws = [w.x, w.y];
                for p in 0..2 {
                    for q in 0..=p {
                        let mut h = e * d2phi * ws[p] * ws[q];
                        if p == q {
                            h = h + e * two * m.slope;
                        }
                        hess[(bi + p, bi + q)] = hess[(bi + p, bi + q)] + h * inv_u;
                    }
                }
            }
            let inv_u2 = inv_u * inv_u;
            let nz: Vec<usize> = (0..du.len()).filter(|&i| du[i] != T::zero()).collect();
            for (pi, &i) in nz.iter().enumerate() {
                grad[i] = grad[i] - du[i] * inv_u;
                for &j in &nz[..=pi] {
                    add_lower(hess, i, j, du[i] * du[j] * inv_u2);
                }
            }
        }
    }
}

/// Solves the convexified trajectory program. The anchor must satisfy the
/// speed and endpoint constraints. The exact objective of the returned
/// trajectory is never below the anchor's.
pub fn solve_trajectory<T: Real>(
    sub: &TrajectorySubproblem<'_, T>,
    opts: &ConvexOptions<T>,
) -> Result<ConvexSolution<T>> {
    let scn = sub.scenario;
    let anchor = sub.anchor;
    let slots = anchor.len();
    let anchor_objective = max_min_rate(scn, anchor, sub.association);
    let keep_anchor = |steps: usize, status: SolveStatus, gap: T, stationarity: T| ConvexSolution {
        trajectory: anchor.clone(),
        eve_distance_slack: anchor.iter().map(|r| r.dist_sq(scn.eve_position)).collect(),
        surrogate_lambda: sub.surrogate_lambda(anchor),
        objective: anchor_objective,
        max_violation: trajectory_violation(scn, anchor),
        stationarity,
        duality_gap: gap,
        newton_steps: steps,
        status,
        kept_anchor: true,
    };

    let has_weight = sub.association.matrix().as_slice().iter().any(|&e| e > T::zero());
    if slots <= 2 || !has_weight {
        return Ok(keep_anchor(0, SolveStatus::Converged, T::zero(), T::zero()));
    }

    let limit = scn.max_step() + T::lit(0.5) * opts.tol_feas.min(T::lit(EPS_FEAS));
    let problem = TrajectoryBarrier {
        sub,
        slots,
        speed_limit_sq: limit * limit,
        active: (0..slots)
            .map(|n| (0..scn.num_users()).any(|k| sub.association[(k, n)] > T::zero()))
            .collect(),
    };

    // strictly feasible start: the anchor, pulled towards the start point
    // if any step sits on the relaxed speed limit
    let mut start = anchor.clone();
    start.waypoints[0] = scn.uav_start;
    start.waypoints[slots - 1] = scn.uav_start;
    let longest = start.max_step();
    let cap = scn.max_step() * (T::one() - T::lit(1e-9));
    if longest > cap {
        let theta = cap / longest;
        for p in start.waypoints.iter_mut() {
            *p = scn.uav_start + (*p - scn.uav_start) * theta;
        }
    }
    let mut x0 = Vec::with_capacity(problem.dim());
    for p in &start.waypoints[1..slots - 1] {
        x0.push(p.x);
        x0.push(p.y);
    }
    x0.push(T::zero());
    let li = problem.lambda_index();
    let g_min = (0..scn.num_users())
        .map(|k| problem.rate_slack(&x0, k))
        .fold(T::infinity(), T::min);
    if !g_min.is_finite() {
        return Err(Error::NumericalFailure("surrogate rate not finite at anchor".into()));
    }
    x0[li] = g_min - T::one().max(g_min.abs() * T::lit(0.1));

    let out = barrier::minimize(&problem, x0, &opts.barrier_options())?;
    let mut waypoints = Vec::with_capacity(slots);
    for n in 0..slots {
        waypoints.push(problem.position(&out.x, n));
    }
    let traj = Trajectory::new(waypoints);
    if traj.iter().any(|p| !p.is_finite()) {
        return Err(Error::NumericalFailure("non-finite waypoint".into()));
    }
    let objective = max_min_rate(scn, &traj, sub.association);
    if !objective.is_finite() {
        return Err(Error::NumericalFailure("non-finite trajectory objective".into()));
    }
    if objective < anchor_objective {
        return Ok(keep_anchor(out.newton_steps, out.status, out.duality_gap, out.stationarity));
    }
    Ok(ConvexSolution {
        eve_distance_slack: (0..slots).map(|n| sub.eve_bounds[n].eval(traj[n])).collect(),
        surrogate_lambda: sub.surrogate_lambda(&traj),
        objective,
        max_violation: trajectory_violation(scn, &traj),
        trajectory: traj,
        stationarity: out.stationarity,
        duality_gap: out.duality_gap,
        newton_steps: out.newton_steps,
        status: out.status,
        kept_anchor: false,
    })
}

/// Result of an association update.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct AssociationSolution<T> {
    pub association: Association<T>,
    /// `min_k Σ_n e_k[n](R_k[n] − R_e[n])` at the returned association.
    pub lambda: T,
    /// `λ + ω·tr{(2E − 1)(2X − 1)ᵀ}`.
    pub objective: T,
    pub max_violation: T,
    pub stationarity: T,
    pub duality_gap: T,
    pub newton_steps: usize,
    pub status: SolveStatus,
}

struct AssociationBarrier<'a, T: Real> {
    diffs: &'a Matrix<T>,
    /// Linear reward on each entry, `2ω(2x − 1)`.
    reward: Matrix<T>,
    users: usize,
    slots: usize,
}

impl<T: Real> AssociationBarrier<'_, T> {
    fn lambda_index(&self) -> usize {
        self.users * self.slots
    }

    fn row_slack(&self, x: &[T], k: usize) -> T {
        let row = &x[k * self.slots..(k + 1) * self.slots];
        row.iter().zip(self.diffs.row(k)).map(|(&e, &c)| e * c).sum::<T>() - x[self.lambda_index()]
    }

    fn column_slack(&self, x: &[T], n: usize) -> T {
        T::one() - (0..self.users).map(|k| x[k * self.slots + n]).sum::<T>()
    }
}

impl<T: Real> BarrierProblem<T> for AssociationBarrier<'_, T> {
    fn dim(&self) -> usize {
        self.users * self.slots + 1
    }

    fn num_inequalities(&self) -> usize {
        2 * self.users * self.slots + self.slots + self.users
    }

    fn objective(&self, x: &[T]) -> T {
        let reward: T = x[..self.lambda_index()]
            .iter()
            .zip(self.reward.as_slice())
            .map(|(&e, &q)| e * q)
            .sum();
        -(x[self.lambda_index()] + reward)
    }

    fn barrier(&self, x: &[T]) -> Option<T> {
        let mut b = T::zero();
        for &e in &x[..self.lambda_index()] {
            if !(e > T::zero() && e < T::one()) {
                return None;
            }
            b = b - e.ln() - (T::one() - e).ln();
        }
        for n in 0..self.slots {
            let s = self.column_slack(x, n);
            if !(s > T::zero()) {
                return None;
            }
            b = b - s.ln();
        }
        for k in 0..self.users {
            let u = self.row_slack(x, k);
            if !(u > T::zero()) || !u.is_finite() {
                return None;
            }
            b = b - u.ln();
        }
        Some(b)
    }

    fn accumulate(&self, x: &[T], t: T, grad: &mut [T], hess: &mut Matrix<T>) {
        let li = self.lambda_index();
        grad[li] = grad[li] - t;
        for i in 0..li {
            let e = x[i];
            let one_m = T::one() - e;
            grad[i] = grad[i] - t * self.reward.as_slice()[i] - T::one() / e + T::one() / one_m;
            hess[(i, i)] = hess[(i, i)] + T::one() / (e * e) + T::one() / (one_m * one_m);
        }
        for n in 0..self.slots {
            let inv = T::one() / self.column_slack(x, n);
            for k in 0..self.users {
                let i = k * self.slots + n;
                grad[i] = grad[i] + inv;
                for j in 0..=k {
                    add_lower(hess, i, j * self.slots + n, inv * inv);
                }
            }
        }
        for k in 0..self.users {
            let inv = T::one() / self.row_slack(x, k);
            let inv2 = inv * inv;
            let base = k * self.slots;
            let c = self.diffs.row(k);
            // ∇u = (c on row k, −1 on λ)
            for n in 0..self.slots {
                grad[base + n] = grad[base + n] - c[n] * inv;
                for m in 0..=n {
                    add_lower(hess, base + n, base + m, c[n] * c[m] * inv2);
                }
                add_lower(hess, li, base + n, -c[n] * inv2);
            }
            grad[li] = grad[li] + inv;
            hess[(li, li)] = hess[(li, li)] + inv2;
        }
    }
}

/// Association LP on precomputed K×N rate differences:
/// maximize `λ + ω·tr{(2E − 1)(2X − 1)ᵀ}` subject to `0 ≤ E ≤ 1`,
/// column sums at most one and `Σ_n e_k[n]c_k[n] ≥ λ` for every user.
/// `aux = None` drops the penalty term (pure relaxation).
pub fn solve_association_lp<T: Real>(
    diffs: &Matrix<T>,
    aux: Option<&AuxiliaryMatrix<T>>,
    omega: T,
    opts: &ConvexOptions<T>,
) -> Result<AssociationSolution<T>> {
    let (users, slots) = diffs.shape();
    if let Some(x) = aux {
        if x.matrix().shape() != diffs.shape() {
            return Err(Error::DimensionMismatch {
                what: "auxiliary matrix",
                expected: users * slots,
                found: x.matrix().rows() * x.matrix().cols(),
            });
        }
    }
    if users == 0 || slots == 0 {
        return Err(Error::DimensionMismatch {
            what: "association LP",
            expected: 1,
            found: 0,
        });
    }
    let two = T::lit(2.0);
    let reward = match aux {
        Some(x) => x.matrix().map(|v| two * omega * (two * v - T::one())),
        None => Matrix::zeros(users, slots),
    };
    let problem = AssociationBarrier {
        diffs,
        reward,
        users,
        slots,
    };
    let e0 = T::one() / T::from_usize_lossy(users + 1);
    let mut x0 = vec![e0; users * slots + 1];
    let li = problem.lambda_index();
    x0[li] = T::zero();
    let g_min = (0..users)
        .map(|k| problem.row_slack(&x0, k))
        .fold(T::infinity(), T::min);
    x0[li] = g_min - T::one().max(g_min.abs() * T::lit(0.1));

    let out = barrier::minimize(&problem, x0, &opts.barrier_options())?;
    let mut assoc = Association::zeros(users, slots);
    for k in 0..users {
        for n in 0..slots {
            assoc[(k, n)] = out.x[k * slots + n].max(T::zero()).min(T::one());
        }
    }
    let lambda = assoc.min_weighted_sum(diffs);
    let penalty_part = match aux {
        Some(x) => omega * crate::approx::centered_trace(assoc.matrix(), x.matrix())?,
        None => T::zero(),
    };
    let max_violation = (0..slots)
        .map(|n| (assoc.matrix().column_sum(n) - T::one()).max(T::zero()))
        .fold(T::zero(), T::max);
    Ok(AssociationSolution {
        association: assoc,
        lambda,
        objective: lambda + penalty_part,
        max_violation,
        stationarity: out.stationarity,
        duality_gap: out.duality_gap,
        newton_steps: out.newton_steps,
        status: out.status,
    })
}

/// Association update for a fixed trajectory and auxiliary matrix.
pub fn solve_association<T: Real>(
    scn: &Scenario<T>,
    traj: &Trajectory<T>,
    aux: &AuxiliaryMatrix<T>,
    omega: T,
    opts: &ConvexOptions<T>,
) -> Result<AssociationSolution<T>> {
    solve_association_lp(&scn.rate_difference_matrix(traj), Some(aux), omega, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eve_rate_is_convex_in_distance_slack() {
        // φ(d) = log2(1 + ρ₀/(z² + d)) must have nonnegative second
        // differences on d ≥ 0 so that −φ is concave
        let s = Scenario::<f64>::evaluation_default();
        let h = 10.0;
        for i in 1..2000 {
            let d = i as f64 * 250.0;
            let second = s.rate_at_sq_distance(d + h) - 2.0 * s.rate_at_sq_distance(d)
                + s.rate_at_sq_distance(d - h);
            assert!(second >= -1e-12, "d={d}: {second}");
        }
    }

    #[test]
    fn single_user_lp_takes_every_positive_slot() {
        let diffs = Matrix::<f64>::from_rows(&[vec![0.5, 1.5, 2.0, 0.1]]).unwrap();
        let sol = solve_association_lp(&diffs, None, 0.0, &ConvexOptions::default()).unwrap();
        assert!((sol.lambda - 4.1).abs() < 1e-5);
        for n in 0..4 {
            assert!(sol.association[(0, n)] > 1.0 - 1e-5);
        }
    }

    #[test]
    fn large_penalty_snaps_to_aux() {
        let diffs = Matrix::<f64>::from_rows(&[vec![1.0, 2.0, 0.5], vec![0.7, 0.2, 3.0]]).unwrap();
        let x = AuxiliaryMatrix(
            Matrix::from_rows(&[vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 0.0]]).unwrap(),
        );
        let sol = solve_association_lp(&diffs, Some(&x), 1e3, &ConvexOptions::default()).unwrap();
        for k in 0..2 {
            for n in 0..3 {
                assert!((sol.association[(k, n)] - x.matrix()[(k, n)]).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn zero_association_keeps_anchor() {
        let s = Scenario::<f64>::evaluation_default();
        let anchor = crate::planner::initial_trajectory(&s, 12);
        let assoc = Association::zeros(2, 12);
        let sub = TrajectorySubproblem::new(&s, &assoc, &anchor).unwrap();
        let sol = solve_trajectory(&sub, &ConvexOptions::default()).unwrap();
        assert_eq!(sol.trajectory, anchor);
        assert_eq!(sol.objective, 0.0);
    }

    #[test]
    fn parked_single_user_stays_put() {
        let mut s = Scenario::<f64>::evaluation_default();
        s.user_positions = vec![s.uav_start];
        s.eve_position = Point2::new(1e4, 1e4);
        let anchor = Trajectory::constant(s.uav_start, 3);
        let assoc = Association::uniform(1, 3);
        let sub = TrajectorySubproblem::new(&s, &assoc, &anchor).unwrap();
        let sol = solve_trajectory(&sub, &ConvexOptions::default()).unwrap();
        for p in sol.trajectory.iter() {
            // the surrogate is nearly flat overhead; the barrier centre may drift
            // by a fraction of a meter within the optimality tolerance
            assert!(p.dist(s.uav_start) < 1.0, "{:?}", sol.trajectory);
        }
    }
}
