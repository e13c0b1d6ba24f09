//! Convexification machinery used by the block updates:
//!
//! * the bilinear penalty `h(E, X) = KN − tr{(2E − 1)(2X − 1)ᵀ}` that
//!   vanishes exactly on binary schedules paired with `X = E`;
//! * the closed-form maximizer of the trace over the ball
//!   `‖2X − 1‖_F² ≤ KN`;
//! * the concave quadratic minorant of `log2(1 + a₁/(a₂ + ‖y‖²))`;
//! * the affine minorant of the squared distance to the eavesdropper.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::matrix::Matrix;
use crate::real::Real;
use crate::scenario::{Association, Scenario, Trajectory};

/// Auxiliary K×N matrix paired with the association in the penalty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct AuxiliaryMatrix<T>(pub Matrix<T>);

impl<T: Real> AuxiliaryMatrix<T> {
    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    /// `‖2X − 1‖_F²`, which must not exceed `KN`.
    pub fn ball_norm_sq(&self) -> T {
        centered_norm_sq(&self.0)
    }
}

fn centered_norm_sq<T: Real>(m: &Matrix<T>) -> T {
    let two = T::lit(2.0);
    m.as_slice()
        .iter()
        .map(|&v| {
            let c = two * v - T::one();
            c * c
        })
        .sum()
}

/// `tr{(2E − 1)(2X − 1)ᵀ}`.
pub fn centered_trace<T: Real>(e: &Matrix<T>, x: &Matrix<T>) -> Result<T> {
    if e.shape() != x.shape() {
        return Err(Error::DimensionMismatch {
            what: "penalty operands",
            expected: e.rows() * e.cols(),
            found: x.rows() * x.cols(),
        });
    }
    let two = T::lit(2.0);
    Ok(e.as_slice()
        .iter()
        .zip(x.as_slice())
        .map(|(&a, &b)| (two * a - T::one()) * (two * b - T::one()))
        .sum())
}

/// `h(E, X) = KN − tr{(2E − 1)(2X − 1)ᵀ}`.
pub fn penalty<T: Real>(e: &Association<T>, x: &AuxiliaryMatrix<T>) -> Result<T> {
    let kn = T::from_usize_lossy(e.num_users() * e.num_slots());
    Ok(kn - centered_trace(e.matrix(), x.matrix())?)
}

/// Maximizer of the centered trace over the ball:
/// `X = √(KN)(2E − 1) / (2‖2E − 1‖_F) + 1/2`, or `X = E` when `E ≡ 1/2`.
pub fn optimal_x<T: Real>(e: &Association<T>) -> AuxiliaryMatrix<T> {
    let m = e.matrix();
    let norm = centered_norm_sq(m).sqrt();
    if norm == T::zero() {
        return AuxiliaryMatrix(m.clone());
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let scale = T::from_usize_lossy(m.rows() * m.cols()).sqrt() / (two * norm);
    AuxiliaryMatrix(m.map(|v| (two * v - T::one()) * scale + half))
}

/// Per-slot coefficients of the concave minorant
/// `f̲(y) = f(y₀) − slope·(‖y‖² − ‖y₀‖²)` of
/// `f(y) = log2(1 + a₁/(a₂ + ‖y‖²))`, expanded at `y₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct MinorantCoeffs<T> {
    /// `f(y₀)`.
    pub constant: T,
    /// `a₁ / [(a₁ + a₂ + ‖y₀‖²)(a₂ + ‖y₀‖²) ln 2]`.
    pub slope: T,
    /// Expansion point `y₀`.
    pub anchor: Point2<T>,
    pub anchor_norm_sq: T,
}

impl<T: Real> MinorantCoeffs<T> {
    pub fn new(a1: T, a2: T, anchor: Point2<T>) -> Self {
        let u0 = anchor.norm_sq();
        Self {
            constant: (T::one() + a1 / (a2 + u0)).log2(),
            slope: a1 / ((a1 + a2 + u0) * (a2 + u0) * T::LN_2()),
            anchor,
            anchor_norm_sq: u0,
        }
    }

    pub fn eval(&self, y: Point2<T>) -> T {
        self.constant - self.slope * (y.norm_sq() - self.anchor_norm_sq)
    }

    pub fn gradient(&self, y: Point2<T>) -> Point2<T> {
        y * (-T::lit(2.0) * self.slope)
    }
}

/// Minorant of user `k`'s rate around every waypoint of `anchor`, in the
/// displacement `y = r[n] − r_k` (a₁ = ρ₀, a₂ = z²).
pub fn rate_minorant<T: Real>(
    scn: &Scenario<T>,
    k: usize,
    anchor: &Trajectory<T>,
) -> Vec<MinorantCoeffs<T>> {
    let a1 = scn.snr_ref();
    let a2 = scn.altitude_sq();
    let uk = scn.user(k);
    anchor
        .iter()
        .map(|&r| MinorantCoeffs::new(a1, a2, r - uk))
        .collect()
}

/// Affine lower bound `gradient·(r − anchor) + offset` on `‖r − r_e‖²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct AffineBound<T> {
    pub anchor: Point2<T>,
    /// `2(anchor − r_e)`.
    pub gradient: Point2<T>,
    /// `‖anchor − r_e‖²`.
    pub offset: T,
}

impl<T: Real> AffineBound<T> {
    pub fn eval(&self, r: Point2<T>) -> T {
        self.gradient.dot(r - self.anchor) + self.offset
    }
}

pub fn eve_distance_minorant<T: Real>(eve: Point2<T>, anchor: &Trajectory<T>) -> Vec<AffineBound<T>> {
    anchor
        .iter()
        .map(|&a| AffineBound {
            anchor: a,
            gradient: (a - eve) * T::lit(2.0),
            offset: a.dist_sq(eve),
        })
        .collect()
}
