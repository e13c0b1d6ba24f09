//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p uavsec --test acceptance`.

mod common;

use std::time::Instant;

use rand::Rng;
use uavsec::approx::{centered_trace, eve_distance_minorant, optimal_x, penalty, rate_minorant, AuxiliaryMatrix};
use uavsec::planner::{
    feasible_for, initial_plan, penalty_association, round_association, solve_p1, solve_p1_adaptive, trace_is_monotone, TraceEntry,
};
use uavsec::convex_solver::{solve_association_lp, ConvexOptions};
use uavsec::validate::{brute_force_association, delivered_bits};
use uavsec::*;

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, name: &str, pass: bool, detail: String) {
        if !pass {
            self.failures += 1;
        }
        println!("[{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn min_secrecy(s: &Scenario64, t: &Trajectory64, a: &Association64) -> f64 {
    let bits = delivered_bits(s, t, a).unwrap();
    bits.into_iter().fold(f64::INFINITY, f64::min) / s.bits_per_slot_unit()
}

fn minorant_suite(r: &mut Report) {
    let started = Instant::now();
    let mut rng = common::rng(1);
    let mut worst_grad = 0.0f64;
    let mut worst_gap = f64::INFINITY;
    let mut worst_anchor = 0.0f64;
    let mut eve_ok = true;
    for _ in 0..1000 {
        let s = common::random_scenario(&mut rng);
        let k = rng.gen_range(0..2);
        let anchor = common::scattered_trajectory(&mut rng, 1);
        let a = anchor[0];
        let m = rate_minorant(&s, k, &anchor)[0];
        let f = |p: Point2<f64>| s.spectral_rate_user(p, k);
        let y0 = a - s.user(k);
        worst_anchor = worst_anchor.max((m.eval(y0) - f(a)).abs() / f(a));
        let h = 1e-3;
        let fd = Point2::new(
            (f(a + Point2::new(h, 0.0)) - f(a - Point2::new(h, 0.0))) / (2.0 * h),
            (f(a + Point2::new(0.0, h)) - f(a - Point2::new(0.0, h))) / (2.0 * h),
        );
        let g = m.gradient(y0);
        worst_grad = worst_grad.max((g - fd).norm() / fd.norm());
        let p = common::scattered_trajectory(&mut rng, 1)[0];
        worst_gap = worst_gap.min(f(p) - m.eval(p - s.user(k)));

        let eb = eve_distance_minorant(s.eve_position, &anchor)[0];
        let d = |q: Point2<f64>| q.dist_sq(s.eve_position);
        let efd = Point2::new(
            (d(a + Point2::new(h, 0.0)) - d(a - Point2::new(h, 0.0))) / (2.0 * h),
            (d(a + Point2::new(0.0, h)) - d(a - Point2::new(0.0, h))) / (2.0 * h),
        );
        let tight = (eb.eval(a) - d(a)).abs() <= 1e-9 * d(a).max(1.0);
        let grad = (eb.gradient - efd).norm() <= 1e-6 * efd.norm().max(1.0);
        eve_ok &= tight && grad && eb.eval(p) <= d(p) + 1e-9 * d(p).max(1.0);
    }
    let secs = started.elapsed().as_secs_f64();
    let pass = worst_gap >= -1e-12 && worst_anchor <= 1e-12 && worst_grad <= 1e-6 && eve_ok && secs < 5.0;
    r.line(
        "minorant suite",
        pass,
        format!(
            "1000 anchors; min(f − f̲) = {worst_gap:.3e}, anchor rel err {worst_anchor:.1e}, \
             gradient rel err {worst_grad:.2e} (≤ 1e-6), eve bound ok = {eve_ok}, {secs:.2} s (< 5 s)"
        ),
    );
}

fn penalty_suite(r: &mut Report) {
    let mut rng = common::rng(2);
    let mut worst = 0.0f64;
    let mut zero_iff_binary = true;
    for _ in 0..100 {
        let (k, n) = (rng.gen_range(1..4), rng.gen_range(1..20));
        let binary = rng.gen_bool(0.3);
        let m = Matrix::from_fn(k, n, |_, _| {
            if binary {
                f64::from(rng.gen_range(0..2u8))
            } else {
                rng.gen_range(0.0..1.0)
            }
        });
        let e = Association(m.clone());
        let x = optimal_x(&e);
        let h = penalty(&e, &x).unwrap();
        let kn = (k * n) as f64;
        let expected = kn - kn.sqrt() * m.map(|v| 2.0 * v - 1.0).frobenius_norm();
        worst = worst.max((h - expected).abs());
        zero_iff_binary &= (h.abs() <= 1e-9) == e.is_binary(0.0);
    }

    let mut beaten = 0;
    let mut trials = 0;
    for _ in 0..10 {
        let (k, n) = (2, rng.gen_range(2..12));
        let e = Association(Matrix::from_fn(k, n, |_, _| rng.gen_range(0.0..1.0)));
        let best = optimal_x(&e);
        let best_val = centered_trace(e.matrix(), best.matrix()).unwrap();
        let radius = ((k * n) as f64).sqrt() / 2.0;
        for _ in 0..1000 {
            trials += 1;
            let dir = Matrix::from_fn(k, n, |_, _| rng.gen_range(-1.0..1.0));
            let scale = radius * rng.gen_range(0.0..1.0f64).sqrt() / dir.frobenius_norm();
            let x = AuxiliaryMatrix(dir.map(|v| 0.5 + v * scale));
            if centered_trace(e.matrix(), x.matrix()).unwrap() > best_val + 1e-12 {
                beaten += 1;
            }
        }
    }
    r.line(
        "penalty/auxiliary suite",
        worst <= 1e-9 && zero_iff_binary && beaten == 0,
        format!(
            "100 random E: max |h − closed form| = {worst:.1e} (≤ 1e-9), zero iff binary = {zero_iff_binary}; \
             closed-form X beaten by {beaten}/{trials} random ball points"
        ),
    );
}

fn feasibility_bound_suite(r: &mut Report) {
    let started = Instant::now();
    let mut rng = common::rng(3);
    let mut scenarios = vec![Scenario64::evaluation_default()];
    scenarios.extend((0..20).map(|_| common::random_scenario(&mut rng)));
    let mut failed = Vec::new();
    for (i, s) in scenarios.iter().enumerate() {
        let ok = prop1_bound(s)
            .and_then(|n| hover_witness(s, n))
            .and_then(|(t, a)| check_plan(s, &t, &a))
            .is_ok_and(|rep| rep.passed);
        if !ok {
            failed.push(i);
        }
    }
    let secs = started.elapsed().as_secs_f64();
    r.line(
        "feasibility bound witness",
        failed.is_empty() && secs < 30.0,
        format!(
            "hover witness at the closed-form bound validates on {}/{} scenarios (evaluation + 20 random), \
             failed {failed:?}, {secs:.2} s (< 30 s)",
            scenarios.len() - failed.len(),
            scenarios.len()
        ),
    );
}

fn clamp_suite(r: &mut Report) {
    let mut rng = common::rng(4);
    let mut mismatched = 0;
    for _ in 0..50 {
        let s = common::random_scenario(&mut rng);
        let n = rng.gen_range(1..=8);
        let t = common::scattered_trajectory(&mut rng, n);
        let b = brute_force_association(&s, &t).unwrap();
        if (b.clamped.lambda - b.unclamped.lambda).abs() > 1e-12 * b.clamped.lambda.abs().max(1.0) {
            mismatched += 1;
        }
    }
    r.line(
        "clamped = unclamped association optimum",
        mismatched == 0,
        format!("{mismatched}/50 exhaustive instances (K = 2, N ≤ 8) differ"),
    );
}

fn oracle_suite(r: &mut Report, traces: &mut Vec<Vec<TraceEntry<f64>>>) {
    let mut rng = common::rng(5);
    let opts = SolverOptions64::default();
    let mut within = 0;
    let mut as_relaxation = 0;
    let mut gaps = Vec::new();
    for _ in 0..20 {
        let s = common::random_scenario(&mut rng);
        let n = rng.gen_range(3..=8);
        let t = common::scattered_trajectory(&mut rng, n);
        let exact = brute_force_association(&s, &t).unwrap().unclamped.lambda;
        let out = penalty_association(&s, &t, &opts).unwrap();
        traces.push(out.trace.clone());
        let binary = out.association.is_binary(0.0) && out.association.max_column_sum() <= 1.0;
        let gap = (exact - out.lambda) / exact;
        if binary && gap <= 0.02 {
            within += 1;
        }
        gaps.push(gap);

        let diffs = s.rate_difference_matrix(&t);
        let relaxed = solve_association_lp(&diffs, None, 0.0, &ConvexOptions::default()).unwrap();
        let rounded = round_association(&relaxed.association).min_weighted_sum(&diffs);
        if (rounded - out.lambda).abs() <= 1e-9 * exact {
            as_relaxation += 1;
        }
    }
    let worst = gaps.iter().cloned().fold(0.0f64, f64::max);
    r.line(
        "penalty association vs exhaustive optimum",
        within >= 18,
        format!(
            "{within}/20 binary schedules within 2% (need ≥ 18); worst relative gap {:.1}%; \
             schedule λ equals the rounded LP relaxation's on {as_relaxation}/20",
            100.0 * worst
        ),
    );
}

fn main() {
    let mut r = Report { failures: 0 };
    let mut traces = Vec::new();
    let s = Scenario64::evaluation_default();
    let opts = SolverOptions64::default();

    minorant_suite(&mut r);
    penalty_suite(&mut r);
    feasibility_bound_suite(&mut r);
    clamp_suite(&mut r);
    oracle_suite(&mut r, &mut traces);

    // Fixed-horizon runs at the horizon of the convergence/association figures.
    let n_fig = 55;
    let fixed = solve_p1(&s, n_fig, &opts, initial_plan(&s, n_fig, &opts)).unwrap();
    traces.push(fixed.trace.clone());
    let adaptive = solve_p1_adaptive(&s, n_fig, &opts, initial_plan(&s, n_fig, &opts)).unwrap();
    traces.push(adaptive.trace.clone());
    let cr = solve_cr(&s, n_fig, &opts).unwrap();

    r.line(
        "BCD plateau",
        fixed.converged && fixed.iterations <= 30 && adaptive.converged && adaptive.iterations <= 30,
        format!(
            "N = {n_fig}: ω = 0.1 run stops after {} iterations, final ω stage after {} (≤ 30)",
            fixed.iterations, adaptive.iterations
        ),
    );

    let fractional = cr.association.matrix().as_slice().iter().any(|&e| (0.05..=0.95).contains(&e));
    r.line(
        "binarity",
        adaptive.binarity_residual() <= 1e-3 && fractional,
        format!(
            "penalty method from ω = 0.1 ends at ω = {} with residual {:.1e} (≤ 1e-3); \
             a single run at fixed ω = 0.1 ends at {:.3}; CR has an entry in [0.05, 0.95]: {fractional}",
            adaptive.omega,
            adaptive.binarity_residual(),
            fixed.binarity_residual()
        ),
    );

    let started = Instant::now();
    let plan = minimize_latency(&s, &opts).unwrap();
    let latency_secs = started.elapsed().as_secs_f64();
    traces.push(plan.trace.clone());
    let hover = hover_baseline(&s).unwrap();
    let bound = prop1_bound(&s).unwrap();
    let pen_r = round_association(&adaptive.association);
    let cr_r = round_association(&cr.association);
    let pen_sec = min_secrecy(&s, &adaptive.trajectory, &pen_r);
    let cr_sec = min_secrecy(&s, &cr.trajectory, &cr_r);
    let margin = (pen_sec - cr_sec) / cr_sec;
    r.line(
        "latency ordering",
        plan.complete && plan.n_star <= bound && plan.n_star < hover.n_star && margin > 0.0 && latency_secs < 300.0,
        format!(
            "n* = {} ≤ bound {bound}, < hover baseline {}; rounded secrecy rate at N = {n_fig}: \
             penalty {pen_sec:.4} vs CR {cr_sec:.4}, margin {:+.2}% (> 0); planner {latency_secs:.1} s (< 300 s)",
            plan.n_star,
            hover.n_star,
            100.0 * margin
        ),
    );

    let (n_min, n_max) = plan.bracket.unwrap();
    let at = feasible_for(&s, plan.n_star, &opts).unwrap().feasible;
    let below = plan.n_star > 1 && feasible_for(&s, plan.n_star - 1, &opts).unwrap().feasible;
    let probe_cap = ((n_max - n_min) as f64).log2().ceil() as usize + 1;
    let stub = planner_stub();
    r.line(
        "bisection correctness",
        at && !below && plan.probes.len() <= probe_cap && stub == (17, true),
        format!(
            "feasible({}) = {at}, feasible({}) = {below}; {} probes over ({n_min}, {n_max}) (≤ {probe_cap}); \
             stub threshold found = {}, within 6 probes = {}",
            plan.n_star,
            plan.n_star - 1,
            plan.probes.len(),
            stub.0,
            stub.1
        ),
    );

    let broken = traces.iter().filter(|t| !trace_is_monotone(t)).count();
    r.line(
        "BCD monotonicity",
        broken == 0,
        format!("{} traces checked, {broken} decrease by more than 1e-9 within an ω stage", traces.len()),
    );

    if r.failures > 0 {
        println!("{} acceptance criteria failed", r.failures);
        std::process::exit(1);
    }
}

fn planner_stub() -> (usize, bool) {
    let mut calls = 0;
    let out = uavsec::planner::bisect_min_feasible(1, 64, (), |n| {
        calls += 1;
        Ok::<_, ()>((n >= 17).then_some(()))
    })
    .unwrap();
    (out.n_star, calls <= 6)
}
