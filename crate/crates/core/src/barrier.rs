//! Log-barrier interior-point method for smooth convex programs
//!
//! ```text
//! minimize  c(x)   subject to  f_i(x) < 0
//! ```
//!
//! Each centering step minimizes `t·c(x) − Σ log(−f_i(x))` by damped
//! Newton iterations with a dense Cholesky solve; `t` grows geometrically
//! until the duality-gap bound `m/t` drops below the requested tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{cholesky_in_place, cholesky_solve, Matrix};
use crate::real::Real;

/// A convex program in barrier form. Implementations own the sparsity
/// structure and assemble derivatives themselves.
pub trait BarrierProblem<T: Real> {
    fn dim(&self) -> usize;

    /// Number of inequality constraints `m`.
    fn num_inequalities(&self) -> usize;

    /// Objective to minimize.
    fn objective(&self, x: &[T]) -> T;

    /// `−Σ log(−f_i(x))`, or `None` if `x` is outside the strict domain.
    fn barrier(&self, x: &[T]) -> Option<T>;

    /// Adds `t∇c + ∇barrier` to `grad` and `t∇²c + ∇²barrier` to the lower
    /// triangle of `hess`. Called only at strictly feasible points.
    fn accumulate(&self, x: &[T], t: T, grad: &mut [T], hess: &mut Matrix<T>);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct BarrierOptions<T> {
    /// Stop when `m/t` is at most this.
    pub gap_tol: T,
    /// Centering stops when half the squared Newton decrement is below this.
    pub newton_tol: T,
    pub t_initial: T,
    pub t_growth: T,
    /// Budget on Newton steps over all centering phases.
    pub max_newton_steps: usize,
}

impl<T: Real> Default for BarrierOptions<T> {
    fn default() -> Self {
        Self {
            gap_tol: T::lit(1e-6),
            newton_tol: T::lit(1e-10),
            t_initial: T::one(),
            t_growth: T::lit(20.0),
            max_newton_steps: 2_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Converged,
    /// Newton budget exhausted; the last strictly feasible iterate is kept.
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarrierOutcome<T> {
    pub x: Vec<T>,
    pub objective: T,
    /// `m/t` at the final barrier weight.
    pub duality_gap: T,
    /// Half the squared Newton decrement at the last centering step.
    pub stationarity: T,
    pub newton_steps: usize,
    pub status: SolveStatus,
}

/// Runs the barrier method from a strictly feasible `x0`.
pub fn minimize<T: Real, P: BarrierProblem<T>>(
    problem: &P,
    x0: Vec<T>,
    opts: &BarrierOptions<T>,
) -> Result<BarrierOutcome<T>> {
    let n = problem.dim();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            what: "barrier start point",
            expected: n,
            found: x0.len(),
        });
    }
    if problem.barrier(&x0).is_none() {
        return Err(Error::NumericalFailure(
            "barrier start point is not strictly feasible".into(),
        ));
    }
    let m = T::from_usize_lossy(problem.num_inequalities().max(1));
    let mut x = x0;
    let mut t = opts.t_initial;
    let mut steps = 0usize;
    let mut stationarity = T::infinity();
    let mut grad = vec![T::zero(); n];
    let mut hess = Matrix::zeros(n, n);
    let mut dx = vec![T::zero(); n];
    let mut trial = vec![T::zero(); n];

    loop {
        // centering
        loop {
            if steps >= opts.max_newton_steps {
                return Ok(finish(problem, x, m / t, stationarity, steps, SolveStatus::MaxIterations));
            }
            steps += 1;
            grad.iter_mut().for_each(|g| *g = T::zero());
            hess.fill(T::zero());
            problem.accumulate(&x, t, &mut grad, &mut hess);
            if grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::NumericalFailure("non-finite barrier gradient".into()));
            }
            newton_direction(&hess, &grad, &mut dx)?;
            let slope: T = grad.iter().zip(&dx).map(|(&g, &d)| g * d).sum();
            stationarity = -slope / T::lit(2.0);
            if !(stationarity > opts.newton_tol) {
                break;
            }
            let phi0 = t * problem.objective(&x) + problem.barrier(&x).expect("feasible iterate");
            let slack = T::lit(64.0) * T::epsilon() * phi0.abs().max(T::one());
            let mut alpha = T::one();
            let mut accepted = false;
            while alpha > T::lit(1e-20) {
                for i in 0..n {
                    trial[i] = x[i] + alpha * dx[i];
                }
                if let Some(b) = problem.barrier(&trial) {
                    let phi = t * problem.objective(&trial) + b;
                    if phi.is_finite() && phi <= phi0 + T::lit(0.25) * alpha * slope + slack {
                        accepted = true;
                        break;
                    }
                }
                alpha = alpha * T::lit(0.5);
            }
            if !accepted {
                // no progress possible at this precision
                break;
            }
            std::mem::swap(&mut x, &mut trial);
        }
        if m / t <= opts.gap_tol {
            return Ok(finish(problem, x, m / t, stationarity, steps, SolveStatus::Converged));
        }
        t = t * opts.t_growth;
    }
}

fn finish<T: Real, P: BarrierProblem<T>>(
    problem: &P,
    x: Vec<T>,
    gap: T,
    stationarity: T,
    steps: usize,
    status: SolveStatus,
) -> BarrierOutcome<T> {
    BarrierOutcome {
        objective: problem.objective(&x),
        x,
        duality_gap: gap,
        stationarity,
        newton_steps: steps,
        status,
    }
}

/// Solves `H dx = −g`, adding diagonal regularization if `H` is not
/// numerically positive definite.
fn newton_direction<T: Real>(hess: &Matrix<T>, grad: &[T], dx: &mut [T]) -> Result<()> {
    let n = grad.len();
    let scale = (0..n).map(|i| hess[(i, i)].abs()).fold(T::zero(), T::max).max(T::one());
    let mut shift = T::zero();
    for _ in 0..30 {
        let mut l = hess.clone();
        for i in 0..n {
            l[(i, i)] = l[(i, i)] + shift;
        }
        if cholesky_in_place(&mut l) {
            for i in 0..n {
                dx[i] = -grad[i];
            }
            cholesky_solve(&l, dx);
            if dx.iter().all(|v| v.is_finite()) {
                return Ok(());
            }
        }
        shift = if shift == T::zero() {
            scale * T::epsilon() * T::lit(16.0)
        } else {
            shift * T::lit(10.0)
        };
    }
    Err(Error::NumericalFailure("Newton system could not be factorized".into()))
}
