//! Physical model: node geometry, line-of-sight channel gains and the
//! per-slot spectral efficiencies of the users and the eavesdropper.
//!
//! All quantities are linear (watts, power ratios, bits/s/Hz). Decibel
//! inputs are converted with [`db_to_linear`] and [`dbm_to_watts`] when a
//! scenario is loaded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::matrix::Matrix;
use crate::real::Real;

/// Absolute feasibility tolerance (meters for positions, unitless for
/// association sums).
pub const EPS_FEAS: f64 = 1e-6;
/// Distance from {0, 1} under which an association entry counts as binary.
pub const EPS_BIN: f64 = 1e-3;
/// Bits in one (decimal) megabyte.
pub const BITS_PER_MB: f64 = 8e6;
/// Bandwidth used when none is given.
pub const DEFAULT_BANDWIDTH_HZ: f64 = 5e6;

pub fn db_to_linear<T: Real>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

pub fn dbm_to_watts<T: Real>(dbm: T) -> T {
    db_to_linear(dbm - T::lit(30.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Scenario<T> {
    pub user_positions: Vec<Point2<T>>,
    pub eve_position: Point2<T>,
    pub uav_start: Point2<T>,
    /// Flight altitude, meters.
    pub altitude: T,
    /// Channel power gain at 1 m (linear).
    pub ref_gain: T,
    /// Transmit power, watts.
    pub tx_power: T,
    /// Noise power, watts.
    pub noise_power: T,
    /// System bandwidth, Hz.
    pub bandwidth: T,
    /// Slot duration, seconds.
    pub slot_len: T,
    /// Maximum horizontal speed, m/s.
    pub v_max: T,
    /// Bits requested by every user.
    pub content_bits: T,
}

impl<T: Real> Scenario<T> {
    /// Two-user evaluation geometry: users at (200, 0) and (600, 0), Eve at
    /// (500, 100), start at (400, 200), 100 m altitude, 50 m/s, 0.5 s
    /// slots, P = 0 dBW, h₀ = −60 dB, σ² = −110 dBm, 10 MB per user and a
    /// 5 MHz bandwidth.
    pub fn evaluation_default() -> Self {
        let p = |x: f64, y: f64| Point2::new(T::lit(x), T::lit(y));
        Self {
            user_positions: vec![p(200.0, 0.0), p(600.0, 0.0)],
            eve_position: p(500.0, 100.0),
            uav_start: p(400.0, 200.0),
            altitude: T::lit(100.0),
            ref_gain: db_to_linear(T::lit(-60.0)),
            tx_power: db_to_linear(T::zero()),
            noise_power: dbm_to_watts(T::lit(-110.0)),
            bandwidth: T::lit(DEFAULT_BANDWIDTH_HZ),
            slot_len: T::lit(0.5),
            v_max: T::lit(50.0),
            content_bits: T::lit(10.0 * BITS_PER_MB),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if self.user_positions.is_empty() {
            return bad("at least one user is required".into());
        }
        let points = self
            .user_positions
            .iter()
            .chain([&self.eve_position, &self.uav_start]);
        if points.into_iter().any(|p| !p.is_finite()) {
            return bad("node coordinates must be finite".into());
        }
        let positive = [
            ("altitude", self.altitude),
            ("ref_gain", self.ref_gain),
            ("tx_power", self.tx_power),
            ("noise_power", self.noise_power),
            ("bandwidth", self.bandwidth),
            ("slot_len", self.slot_len),
            ("v_max", self.v_max),
            ("content_bits", self.content_bits),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return bad(format!("{name} must be finite and strictly positive, got {v}"));
            }
        }
        let rho = self.snr_ref();
        if !(rho > T::zero()) || !rho.is_finite() {
            return bad(format!("reference SNR P*h0/noise must be finite and positive, got {rho}"));
        }
        Ok(())
    }

    pub fn num_users(&self) -> usize {
        self.user_positions.len()
    }

    /// ρ₀ = P·h₀/σ².
    pub fn snr_ref(&self) -> T {
        self.tx_power * self.ref_gain / self.noise_power
    }

    pub fn altitude_sq(&self) -> T {
        self.altitude * self.altitude
    }

    /// Largest distance the UAV covers in one slot.
    pub fn max_step(&self) -> T {
        self.v_max * self.slot_len
    }

    /// Bits carried per slot per unit of spectral efficiency (B₀τ).
    pub fn bits_per_slot_unit(&self) -> T {
        self.bandwidth * self.slot_len
    }

    pub fn user(&self, k: usize) -> Point2<T> {
        self.user_positions[k]
    }

    pub fn channel_gain(&self, r: Point2<T>, target: Point2<T>) -> T {
        self.ref_gain / (self.altitude_sq() + r.dist_sq(target))
    }

    /// `log2(1 + ρ₀ / (z² + d²))` for a horizontal squared distance `d²`.
    pub fn rate_at_sq_distance(&self, dist_sq: T) -> T {
        (T::one() + self.snr_ref() / (self.altitude_sq() + dist_sq)).log2()
    }

    /// Spectral efficiency towards user `k` (0-based) from position `r`,
    /// without the association factor.
    pub fn spectral_rate_user(&self, r: Point2<T>, k: usize) -> T {
        self.rate_at_sq_distance(r.dist_sq(self.user(k)))
    }

    pub fn spectral_rate_eve(&self, r: Point2<T>) -> T {
        self.rate_at_sq_distance(r.dist_sq(self.eve_position))
    }

    /// User rate minus eavesdropper rate, not clamped.
    pub fn rate_difference(&self, r: Point2<T>, k: usize) -> T {
        self.spectral_rate_user(r, k) - self.spectral_rate_eve(r)
    }

    /// Secrecy rate `[R_k − R_e]⁺` in bits/s/Hz.
    pub fn secrecy_rate(&self, r: Point2<T>, k: usize) -> T {
        self.rate_difference(r, k).max(T::zero())
    }

    /// Analytic gradient of [`Self::spectral_rate_user`] with respect to `r`.
    pub fn spectral_rate_user_gradient(&self, r: Point2<T>, k: usize) -> Point2<T> {
        let y = r - self.user(k);
        let u = y.norm_sq();
        let z2 = self.altitude_sq();
        let rho = self.snr_ref();
        let coeff = -rho / ((z2 + u) * (z2 + rho + u) * T::LN_2());
        y * (coeff * T::lit(2.0))
    }

    /// K×N matrix of unclamped rate differences along a trajectory.
    pub fn rate_difference_matrix(&self, traj: &Trajectory<T>) -> Matrix<T> {
        let eve: Vec<T> = traj.iter().map(|&r| self.spectral_rate_eve(r)).collect();
        Matrix::from_fn(self.num_users(), traj.len(), |k, n| {
            self.spectral_rate_user(traj[n], k) - eve[n]
        })
    }

    /// Length of the tour r₀ → r₁ → … → r_K followed by the direct return
    /// r_K → r₀, in scenario user order.
    pub fn tour_length(&self) -> T {
        let mut prev = self.uav_start;
        let mut total = T::zero();
        for &u in &self.user_positions {
            total = total + u.dist(prev);
            prev = u;
        }
        total + prev.dist(self.uav_start)
    }

    /// Copies the scenario with a different content size.
    pub fn with_content_bits(&self, bits: T) -> Self {
        Self {
            content_bits: bits,
            ..self.clone()
        }
    }

    pub fn cast<U: Real>(&self) -> Scenario<U> {
        let c = |v: T| U::lit(v.to_f64_lossy());
        Scenario {
            user_positions: self.user_positions.iter().map(|p| p.cast()).collect(),
            eve_position: self.eve_position.cast(),
            uav_start: self.uav_start.cast(),
            altitude: c(self.altitude),
            ref_gain: c(self.ref_gain),
            tx_power: c(self.tx_power),
            noise_power: c(self.noise_power),
            bandwidth: c(self.bandwidth),
            slot_len: c(self.slot_len),
            v_max: c(self.v_max),
            content_bits: c(self.content_bits),
        }
    }
}

/// Horizontal UAV waypoints, one per slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Trajectory<T> {
    pub waypoints: Vec<Point2<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn new(waypoints: Vec<Point2<T>>) -> Self {
        Self { waypoints }
    }

    pub fn constant(at: Point2<T>, n: usize) -> Self {
        Self::new(vec![at; n])
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2<T>> {
        self.waypoints.iter()
    }

    /// Largest distance between consecutive waypoints.
    pub fn max_step(&self) -> T {
        self.waypoints
            .windows(2)
            .map(|w| w[0].dist(w[1]))
            .fold(T::zero(), T::max)
    }
}

impl<T> std::ops::Index<usize> for Trajectory<T> {
    type Output = Point2<T>;
    fn index(&self, n: usize) -> &Point2<T> {
        &self.waypoints[n]
    }
}

/// K×N user association (scheduling) matrix; entry `(k, n)` is the share
/// of slot `n` given to user `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Association<T>(pub Matrix<T>);

impl<T: Real> Association<T> {
    pub fn zeros(users: usize, slots: usize) -> Self {
        Self(Matrix::zeros(users, slots))
    }

    /// Equal time sharing `1/K` in every slot.
    pub fn uniform(users: usize, slots: usize) -> Self {
        Self(Matrix::filled(
            users,
            slots,
            T::one() / T::from_usize_lossy(users.max(1)),
        ))
    }

    pub fn num_users(&self) -> usize {
        self.0.rows()
    }

    pub fn num_slots(&self) -> usize {
        self.0.cols()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    /// `max_{k,n} min(e, 1 − e)`; zero for an exactly binary schedule.
    pub fn binarity_residual(&self) -> T {
        self.0
            .as_slice()
            .iter()
            .map(|&e| e.min(T::one() - e).max(T::zero()))
            .fold(T::zero(), T::max)
    }

    pub fn is_binary(&self, tol: T) -> bool {
        self.0
            .as_slice()
            .iter()
            .all(|&e| e.abs() <= tol || (e - T::one()).abs() <= tol)
    }

    pub fn max_column_sum(&self) -> T {
        (0..self.num_slots())
            .map(|n| self.0.column_sum(n))
            .fold(T::zero(), T::max)
    }

    /// Per-user `min_k Σ_n e_k[n]·c_k[n]` for a K×N coefficient matrix.
    pub fn min_weighted_sum(&self, coeffs: &Matrix<T>) -> T {
        (0..self.num_users())
            .map(|k| self.weighted_row_sum(coeffs, k))
            .fold(T::infinity(), T::min)
    }

    pub fn weighted_row_sum(&self, coeffs: &Matrix<T>, k: usize) -> T {
        self.0
            .row(k)
            .iter()
            .zip(coeffs.row(k))
            .map(|(&e, &c)| e * c)
            .sum()
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for Association<T> {
    type Output = T;
    fn index(&self, idx: (usize, usize)) -> &T {
        &self.0[idx]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for Association<T> {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut T {
        &mut self.0[idx]
    }
}

/// Exact max-min objective `λ(R, E) = min_k Σ_n e_k[n](R_k[n] − R_e[n])`
/// (unclamped).
pub fn max_min_rate<T: Real>(scn: &Scenario<T>, traj: &Trajectory<T>, assoc: &Association<T>) -> T {
    assoc.min_weighted_sum(&scn.rate_difference_matrix(traj))
}
