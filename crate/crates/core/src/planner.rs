//! Latency minimization: an inexact block-coordinate penalty method for
//! the fixed-horizon max-min secrecy problem, wrapped in a bisection over
//! the number of slots.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::{centered_trace, optimal_x, penalty, AuxiliaryMatrix};
use crate::bounds::{hover_witness, prop1_bound, travel_lower_bound};
use crate::convex_solver::{
    solve_association_lp, solve_trajectory, trajectory_violation, ConvexOptions, TrajectorySubproblem,
};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::real::Real;
use crate::scenario::{max_min_rate, Association, Scenario, Trajectory, EPS_BIN, EPS_FEAS};
use crate::validate::{check_plan, PlanReport};

/// Largest decrease of the penalized objective tolerated between
/// iterations before the run is declared broken.
pub const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct SolverOptions<T> {
    /// Penalty weight ω.
    pub omega: T,
    pub bcd_max_iters: usize,
    /// Stop when the penalized objective changes by less than this
    /// fraction between iterations.
    pub bcd_rel_tol: T,
    pub convex: ConvexOptions<T>,
    /// Lower end of the slot bracket; defaults to the travel bound.
    pub n_min: Option<usize>,
    /// Upper end of the slot bracket; defaults to the closed-form bound.
    pub n_max: Option<usize>,
    /// Seed for jittering the initial association; `None` keeps it uniform.
    pub seed: Option<u64>,
    /// Re-runs with a larger ω when the final schedule is not binary.
    pub omega_retries: usize,
    pub omega_growth: T,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            omega: T::lit(0.1),
            bcd_max_iters: 50,
            bcd_rel_tol: T::lit(1e-4),
            convex: ConvexOptions::default(),
            n_min: None,
            n_max: None,
            seed: None,
            omega_retries: 3,
            omega_growth: T::lit(5.0),
        }
    }
}

impl<T: Real> SolverOptions<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > T::zero()) {
            return Err(Error::InvalidOptions(format!("omega must be positive, got {}", self.omega)));
        }
        if self.bcd_max_iters == 0 {
            return Err(Error::InvalidOptions("bcd_max_iters must be at least 1".into()));
        }
        if !(self.omega_growth > T::one()) {
            return Err(Error::InvalidOptions("omega_growth must exceed 1".into()));
        }
        if self.n_min == Some(0) {
            return Err(Error::InvalidOptions("n_min must be at least 1".into()));
        }
        if let (Some(lo), Some(hi)) = (self.n_min, self.n_max) {
            if lo >= hi {
                return Err(Error::InvalidOptions(format!("bracket ({lo}, {hi}) is empty")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct TraceEntry<T> {
    /// Counted across ω stages.
    pub iteration: usize,
    /// Penalty weight in force; zero for the relaxation.
    pub omega: T,
    /// `λ − ω·h(E, X)`.
    pub penalized_objective: T,
    /// Exact max-min rate sum `min_k Σ_n e_k[n](R_k[n] − R_e[n])`.
    pub lambda: T,
    pub binarity_residual: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct BcdOutcome<T> {
    pub trajectory: Trajectory<T>,
    pub association: Association<T>,
    pub lambda: T,
    /// Every ω stage in order; the objective is non-decreasing within a
    /// stage and may drop where ω grows.
    pub trace: Vec<TraceEntry<T>>,
    /// Iterations of the final stage.
    pub iterations: usize,
    pub converged: bool,
    /// Penalty weight of the run; zero for the relaxation.
    pub omega: T,
}

impl<T: Real> BcdOutcome<T> {
    pub fn binarity_residual(&self) -> T {
        self.association.binarity_residual()
    }
}

/// Circle through the start point, centred on the way to the users'
/// centroid and shrunk until one lap fits in `n − 1` steps.
pub fn initial_trajectory<T: Real>(scn: &Scenario<T>, n: usize) -> Trajectory<T> {
    let k = T::from_usize_lossy(scn.num_users());
    let centroid = scn
        .user_positions
        .iter()
        .fold(Point2::origin(), |acc, &p| acc + p)
        * (T::one() / k);
    circle_through_start(scn, centroid, n)
}

/// Closed loop of `n` waypoints starting and ending at the start point on
/// the largest circle towards `centre` whose chords respect the speed
/// limit.
pub fn circle_through_start<T: Real>(scn: &Scenario<T>, centre: Point2<T>, n: usize) -> Trajectory<T> {
    let start = scn.uav_start;
    let reach = start.dist(centre);
    if n <= 2 || reach == T::zero() {
        return Trajectory::constant(start, n);
    }
    let steps = T::from_usize_lossy(n - 1);
    let pi = T::PI();
    let max_radius = scn.max_step() * T::lit(1.0 - 1e-3) / (T::lit(2.0) * (pi / steps).sin());
    let radius = reach.min(max_radius);
    let centre = start + (centre - start) * (radius / reach);
    let offset = start - centre;
    let phase = offset.y.atan2(offset.x);
    let mut waypoints: Vec<_> = (0..n)
        .map(|j| {
            let a = phase + T::lit(2.0) * pi * T::from_usize_lossy(j) / steps;
            centre + Point2::new(a.cos(), a.sin()) * radius
        })
        .collect();
    waypoints[0] = start;
    waypoints[n - 1] = start;
    Trajectory::new(waypoints)
}

/// Equal time sharing `1/K`, optionally jittered by up to ±10% (columns
/// rescaled to keep their sums at most one).
pub fn initial_association<T: Real>(scn: &Scenario<T>, n: usize, seed: Option<u64>) -> Association<T> {
    let k_users = scn.num_users();
    let mut assoc = Association::uniform(k_users, n);
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in assoc.0.as_mut_slice() {
            let u: f64 = rng.gen_range(-0.1..0.1);
            *v = *v * T::lit(1.0 + u);
        }
        for slot in 0..n {
            let sum = assoc.0.column_sum(slot);
            if sum > T::one() {
                for k in 0..k_users {
                    assoc[(k, slot)] = assoc[(k, slot)] / sum;
                }
            }
        }
    }
    assoc
}

pub fn initial_plan<T: Real>(
    scn: &Scenario<T>,
    n: usize,
    opts: &SolverOptions<T>,
) -> (Trajectory<T>, Association<T>) {
    (initial_trajectory(scn, n), initial_association(scn, n, opts.seed))
}

#[derive(Debug, Clone, Copy)]
enum Mode<T> {
    Penalty(T),
    Relaxation,
}

fn check_init<T: Real>(
    scn: &Scenario<T>,
    n: usize,
    init: &(Trajectory<T>, Association<T>),
) -> Result<()> {
    let (traj, assoc) = init;
    if traj.len() != n || assoc.num_slots() != n || assoc.num_users() != scn.num_users() {
        return Err(Error::DimensionMismatch {
            what: "initial plan",
            expected: n,
            found: traj.len(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidOptions("horizon must be at least one slot".into()));
    }
    if trajectory_violation(scn, traj) > T::lit(EPS_FEAS) {
        return Err(Error::InvalidOptions(
            "initial trajectory violates speed or endpoint constraints".into(),
        ));
    }
    let m = assoc.matrix();
    if m.as_slice().iter().any(|&e| !(e >= T::zero() && e <= T::one()))
        || assoc.max_column_sum() > T::one() + T::lit(EPS_FEAS)
    {
        return Err(Error::InvalidOptions("initial association is not a valid time sharing".into()));
    }
    Ok(())
}

fn run_bcd<T: Real>(
    scn: &Scenario<T>,
    opts: &SolverOptions<T>,
    init: (Trajectory<T>, Association<T>),
    mode: Mode<T>,
    move_trajectory: bool,
) -> Result<BcdOutcome<T>> {
    let (mut traj, mut assoc) = init;
    let omega = match mode {
        Mode::Penalty(w) => w,
        Mode::Relaxation => T::zero(),
    };
    let mut aux = match mode {
        Mode::Penalty(_) => Some(optimal_x(&assoc)),
        Mode::Relaxation => None,
    };
    let evaluate = |traj: &Trajectory<T>, assoc: &Association<T>, aux: Option<&AuxiliaryMatrix<T>>| -> Result<(T, T)> {
        let lambda = max_min_rate(scn, traj, assoc);
        let pen = match aux {
            Some(x) => omega * penalty(assoc, x)?,
            None => T::zero(),
        };
        Ok((lambda - pen, lambda))
    };

    let (mut phi, lambda0) = evaluate(&traj, &assoc, aux.as_ref())?;
    let mut trace = vec![TraceEntry {
        iteration: 0,
        omega,
        penalized_objective: phi,
        lambda: lambda0,
        binarity_residual: assoc.binarity_residual(),
    }];
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=opts.bcd_max_iters {
        iterations = it;
        if move_trajectory {
            let sub = TrajectorySubproblem::new(scn, &assoc, &traj)?;
            traj = solve_trajectory(&sub, &opts.convex)?.trajectory;
        }
        if let Mode::Penalty(_) = mode {
            aux = Some(optimal_x(&assoc));
        }
        let diffs = scn.rate_difference_matrix(&traj);
        let lp = solve_association_lp(&diffs, aux.as_ref(), omega, &opts.convex)?;
        let incumbent = assoc.min_weighted_sum(&diffs)
            + match aux.as_ref() {
                Some(x) => omega * centered_trace(assoc.matrix(), x.matrix())?,
                None => T::zero(),
            };
        if lp.objective >= incumbent {
            assoc = lp.association;
        }

        let (next, lambda) = evaluate(&traj, &assoc, aux.as_ref())?;
        if next < phi - T::lit(MONOTONE_SLACK) {
            return Err(Error::NonMonotoneObjective {
                iteration: it,
                previous: phi.to_f64_lossy(),
                current: next.to_f64_lossy(),
            });
        }
        trace.push(TraceEntry {
            iteration: it,
            omega,
            penalized_objective: next,
            lambda,
            binarity_residual: assoc.binarity_residual(),
        });
        let change = (next - phi).abs();
        phi = next;
        if change == T::zero() || change <= opts.bcd_rel_tol * trace[it - 1].penalized_objective.abs() {
            converged = true;
            break;
        }
    }
    let lambda = trace.last().map_or(T::zero(), |e| e.lambda);
    Ok(BcdOutcome {
        trajectory: traj,
        association: assoc,
        lambda,
        trace,
        iterations,
        converged,
        omega,
    })
}

/// One run of the inexact block-coordinate penalty method at fixed ω:
/// trajectory step around the previous trajectory, closed-form auxiliary
/// update, association LP; repeated until the penalized objective settles.
pub fn solve_p1<T: Real>(
    scn: &Scenario<T>,
    n: usize,
    opts: &SolverOptions<T>,
    init: (Trajectory<T>, Association<T>),
) -> Result<BcdOutcome<T>> {
    scn.validate()?;
    opts.validate()?;
    check_init(scn, n, &init)?;
    run_bcd(scn, opts, init, Mode::Penalty(opts.omega), true)
}

/// [`solve_p1`] followed, while the result is not binary, by at most
/// `omega_retries` further runs with ω multiplied by `omega_growth`, each
/// warm-started from the previous run's plan.
pub fn solve_p1_adaptive<T: Real>(
    scn: &Scenario<T>,
    n: usize,
    opts: &SolverOptions<T>,
    init: (Trajectory<T>, Association<T>),
) -> Result<BcdOutcome<T>> {
    scn.validate()?;
    opts.validate()?;
    check_init(scn, n, &init)?;
    escalate(opts, |omega, start| run_bcd(scn, opts, start, Mode::Penalty(omega), true), init)
}

fn escalate<T: Real>(
    opts: &SolverOptions<T>,
    mut run: impl FnMut(T, (Trajectory<T>, Association<T>)) -> Result<BcdOutcome<T>>,
    init: (Trajectory<T>, Association<T>),
) -> Result<BcdOutcome<T>> {
    let mut omega = opts.omega;
    let mut out = run(omega, init)?;
    for _ in 0..opts.omega_retries {
        if out.binarity_residual() <= T::lit(EPS_BIN) {
            break;
        }
        omega = omega * opts.omega_growth;
        let mut next = run(omega, (out.trajectory.clone(), out.association.clone()))?;
        let offset = out.trace.last().map_or(0, |e| e.iteration + 1);
        for e in &mut next.trace {
            e.iteration += offset;
        }
        out.trace.append(&mut next.trace);
        next.trace = std::mem::take(&mut out.trace);
        out = next;
    }
    Ok(out)
}

/// Continuous relaxation: the same alternation with ω = 0 and no auxiliary
/// block, leaving the association fractional.
pub fn solve_cr<T: Real>(scn: &Scenario<T>, n: usize, opts: &SolverOptions<T>) -> Result<BcdOutcome<T>> {
    scn.validate()?;
    let init = initial_plan(scn, n, opts);
    check_init(scn, n, &init)?;
    run_bcd(scn, opts, init, Mode::Relaxation, true)
}

/// Penalty alternation over the association and auxiliary blocks only,
/// with the trajectory held fixed, followed by rounding.
pub fn penalty_association<T: Real>(
    scn: &Scenario<T>,
    traj: &Trajectory<T>,
    opts: &SolverOptions<T>,
) -> Result<BcdOutcome<T>> {
    scn.validate()?;
    opts.validate()?;
    let n = traj.len();
    let init = (traj.clone(), initial_association(scn, n, opts.seed));
    let mut out = escalate(opts, |omega, start| run_bcd(scn, opts, start, Mode::Penalty(omega), false), init)?;
    out.association = round_association(&out.association);
    out.lambda = max_min_rate(scn, traj, &out.association);
    Ok(out)
}

/// Rounds each slot to its largest entry if that entry is at least 1/2,
/// otherwise to idle. Ties go to the lower user index.
pub fn round_association<T: Real>(assoc: &Association<T>) -> Association<T> {
    let (k_users, slots) = assoc.matrix().shape();
    let mut out = Association::zeros(k_users, slots);
    for n in 0..slots {
        let mut best: Option<(usize, T)> = None;
        for k in 0..k_users {
            let e = assoc[(k, n)];
            if best.is_none_or(|(_, b)| e > b) {
                best = Some((k, e));
            }
        }
        if let Some((k, e)) = best {
            if e >= T::lit(0.5) {
                out[(k, n)] = T::one();
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    PenaltyBcd,
    HoverWitness,
    Hover,
    Circular,
    ContinuousRelaxation,
}

/// Outcome of one fixed-horizon feasibility probe.
#[derive(Debug, Clone, PartialEq)]
pub struct Feasibility<T: Real> {
    pub slots: usize,
    pub feasible: bool,
    pub source: Scheme,
    pub trajectory: Trajectory<T>,
    pub association: Association<T>,
    pub report: PlanReport<T>,
    /// BCD run behind the plan (absent for the hover fallback).
    pub bcd: Option<BcdOutcome<T>>,
}

/// Decides whether all content can be delivered in `n` slots: runs the
/// penalty method, rounds the schedule, re-optimizes the trajectory once
/// for the rounded schedule and validates. Falls back to the hover
/// witness when the optimized plan does not validate.
pub fn feasible_for<T: Real>(scn: &Scenario<T>, n: usize, opts: &SolverOptions<T>) -> Result<Feasibility<T>> {
    if n == 0 {
        return Err(Error::InvalidOptions("horizon must be at least one slot".into()));
    }
    scn.validate()?;
    opts.validate()?;
    let init = initial_plan(scn, n, opts);
    let bcd = solve_p1_adaptive(scn, n, opts, init)?;
    let rounded = round_association(&bcd.association);
    let sub = TrajectorySubproblem::new(scn, &rounded, &bcd.trajectory)?;
    let traj = solve_trajectory(&sub, &opts.convex)?.trajectory;
    let report = check_plan(scn, &traj, &rounded)?;
    if report.passed {
        return Ok(Feasibility {
            slots: n,
            feasible: true,
            source: Scheme::PenaltyBcd,
            trajectory: traj,
            association: rounded,
            report,
            bcd: Some(bcd),
        });
    }
    if let Ok((wt, wa)) = hover_witness(scn, n) {
        let wreport = check_plan(scn, &wt, &wa)?;
        if wreport.passed {
            return Ok(Feasibility {
                slots: n,
                feasible: true,
                source: Scheme::HoverWitness,
                trajectory: wt,
                association: wa,
                report: wreport,
                bcd: None,
            });
        }
    }
    Ok(Feasibility {
        slots: n,
        feasible: false,
        source: Scheme::PenaltyBcd,
        trajectory: traj,
        association: rounded,
        report,
        bcd: Some(bcd),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub slots: usize,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BisectionOutcome<W> {
    pub n_star: usize,
    pub witness: W,
    pub probes: Vec<Probe>,
}

/// True if the penalized objective never drops by more than
/// [`MONOTONE_SLACK`] within an ω stage.
pub fn trace_is_monotone<T: Real>(trace: &[TraceEntry<T>]) -> bool {
    trace.windows(2).all(|w| {
        w[0].omega != w[1].omega || w[1].penalized_objective >= w[0].penalized_objective - T::lit(MONOTONE_SLACK)
    })
}

/// Smallest `n` in `[n_min, n_max]` accepted by a monotone predicate, given
/// a witness already known for `n_max`. Each step probes
/// `⌈(lo + hi)/2⌉` with `lo` starting at `n_min − 1`.
pub fn bisect_min_feasible<W, E>(
    n_min: usize,
    n_max: usize,
    upper_witness: W,
    mut probe: impl FnMut(usize) -> std::result::Result<Option<W>, E>,
) -> std::result::Result<BisectionOutcome<W>, E> {
    let mut lo = n_min.max(1) - 1;
    let mut hi = n_max;
    let mut best = upper_witness;
    let mut probes = Vec::new();
    while hi > lo + 1 {
        let mid = (lo + hi).div_ceil(2);
        match probe(mid)? {
            Some(w) => {
                probes.push(Probe { slots: mid, feasible: true });
                hi = mid;
                best = w;
            }
            None => {
                probes.push(Probe { slots: mid, feasible: false });
                lo = mid;
            }
        }
    }
    Ok(BisectionOutcome {
        n_star: hi,
        witness: best,
        probes,
    })
}

/// Final plan of any scheme together with its validation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct PlanResult<T> {
    pub scheme: Scheme,
    pub n_star: usize,
    pub latency_s: T,
    pub trajectory: Trajectory<T>,
    pub association: Association<T>,
    pub delivered_bits: Vec<T>,
    pub required_bits: T,
    /// Every user received its content and no constraint is violated.
    pub complete: bool,
    /// Exact unclamped max-min rate sum of the plan.
    pub lambda: T,
    pub binarity_residual: T,
    pub omega: Option<T>,
    pub trace: Vec<TraceEntry<T>>,
    pub probes: Vec<Probe>,
    pub bracket: Option<(usize, usize)>,
    pub prop1_bound: Option<usize>,
    pub wall_time_s: f64,
    pub report: PlanReport<T>,
}

impl<T: Real> PlanResult<T> {
    /// Validates the plan and packages it; scheme-specific fields are left
    /// empty for the caller to fill.
    pub fn assemble(
        scn: &Scenario<T>,
        scheme: Scheme,
        trajectory: Trajectory<T>,
        association: Association<T>,
        started: Instant,
    ) -> Result<Self> {
        let report = check_plan(scn, &trajectory, &association)?;
        let n = trajectory.len();
        Ok(Self {
            scheme,
            n_star: n,
            latency_s: T::from_usize_lossy(n) * scn.slot_len,
            lambda: max_min_rate(scn, &trajectory, &association),
            binarity_residual: association.binarity_residual(),
            delivered_bits: report.per_user_bits.clone(),
            required_bits: scn.content_bits,
            complete: report.passed,
            trajectory,
            association,
            omega: None,
            trace: Vec::new(),
            probes: Vec::new(),
            bracket: None,
            prop1_bound: prop1_bound(scn).ok(),
            wall_time_s: started.elapsed().as_secs_f64(),
            report,
        })
    }
}

/// Minimum number of slots that delivers every user's content securely,
/// found by bisection between the travel bound and the closed-form bound.
pub fn minimize_latency<T: Real>(scn: &Scenario<T>, opts: &SolverOptions<T>) -> Result<PlanResult<T>> {
    let started = Instant::now();
    scn.validate()?;
    opts.validate()?;
    let n_max = match opts.n_max {
        Some(n) => n,
        None => prop1_bound(scn)?,
    };
    let n_min = opts.n_min.unwrap_or(travel_lower_bound(scn)?).clamp(1, n_max);

    let top = feasible_for(scn, n_max, opts)?;
    if !top.feasible {
        return Err(Error::InfeasibleBracket { n_max });
    }
    let outcome = bisect_min_feasible(n_min, n_max, top, |n| {
        let f = feasible_for(scn, n, opts)?;
        Ok::<_, Error>(f.feasible.then_some(f))
    })?;
    let best = outcome.witness;
    let mut plan = PlanResult::assemble(scn, best.source, best.trajectory, best.association, started)?;
    if let Some(bcd) = best.bcd {
        plan.omega = Some(bcd.omega);
        plan.trace = bcd.trace;
    }
    plan.probes = outcome.probes;
    plan.bracket = Some((n_min, n_max));
    plan.wall_time_s = started.elapsed().as_secs_f64();
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_threshold() {
        let mut calls = 0;
        let out = bisect_min_feasible(1, 64, (), |n| {
            calls += 1;
            Ok::<_, ()>((n >= 17).then_some(()))
        })
        .unwrap();
        assert_eq!(out.n_star, 17);
        assert!(calls <= 6, "{calls} probes");
        assert_eq!(out.probes.len(), calls);
    }

    #[test]
    fn bisection_accepts_lower_end() {
        let out = bisect_min_feasible(5, 9, (), |_| Ok::<_, ()>(Some(()))).unwrap();
        assert_eq!(out.n_star, 5);
    }

    #[test]
    fn rounding_keeps_one_user_per_slot() {
        let a = Association(
            crate::matrix::Matrix::from_rows(&[vec![0.6, 0.5, 0.2, 0.5], vec![0.4, 0.5, 0.3, 0.0]])
                .unwrap(),
        );
        let r = round_association(&a);
        assert_eq!(r.matrix().to_rows(), vec![vec![1.0, 1.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 0.0]]);
    }

    #[test]
    fn initial_circle_is_feasible() {
        let s = Scenario::<f64>::evaluation_default();
        for n in [1, 2, 3, 10, 58, 80] {
            let t = initial_trajectory(&s, n);
            assert_eq!(t.len(), n);
            assert!(trajectory_violation(&s, &t) == 0.0, "n={n}");
        }
        // the evaluation geometry's circle passes over both users
        let t = initial_trajectory(&s, 81);
        assert!(t.waypoints[20].dist(s.user(0)) < 1e-9);
        assert!(t.waypoints[60].dist(s.user(1)) < 1e-9);
    }

    #[test]
    fn seeded_association_is_valid_and_reproducible() {
        let s = Scenario::<f64>::evaluation_default();
        let a = initial_association(&s, 10, Some(7));
        assert_eq!(a, initial_association(&s, 10, Some(7)));
        assert!(a.max_column_sum() <= 1.0);
        assert_ne!(a, initial_association(&s, 10, None));
    }

    #[test]
    fn options_are_checked() {
        let bad = SolverOptions::<f64> {
            omega: 0.0,
            ..SolverOptions::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverOptions::<f64> {
            n_min: Some(10),
            n_max: Some(10),
            ..SolverOptions::default()
        };
        assert!(bad.validate().is_err());
    }
}
