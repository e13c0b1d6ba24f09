//! On-disk scenario description. Powers and gains are given in dB and
//! converted on load.

use std::path::Path;

use serde::{Deserialize, Serialize};
use uavsec::scenario::{db_to_linear, dbm_to_watts, BITS_PER_MB, DEFAULT_BANDWIDTH_HZ};
use uavsec::{Point2, Scenario64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    /// Ground user positions `[x, y]` in meters.
    pub users: Vec<[f64; 2]>,
    pub eve: [f64; 2],
    pub uav_start: [f64; 2],
    pub altitude_m: f64,
    pub ref_gain_db: f64,
    pub tx_power_dbw: f64,
    pub noise_dbm: f64,
    #[serde(default = "default_bandwidth")]
    pub bandwidth_hz: f64,
    pub slot_s: f64,
    pub vmax_mps: f64,
    pub content_mb: f64,
}

fn default_bandwidth() -> f64 {
    DEFAULT_BANDWIDTH_HZ
}

fn point(p: [f64; 2]) -> Point2<f64> {
    Point2::new(p[0], p[1])
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e.message()))
    }

    pub fn to_scenario(&self) -> Scenario64 {
        Scenario64 {
            user_positions: self.users.iter().copied().map(point).collect(),
            eve_position: point(self.eve),
            uav_start: point(self.uav_start),
            altitude: self.altitude_m,
            ref_gain: db_to_linear(self.ref_gain_db),
            tx_power: db_to_linear(self.tx_power_dbw),
            noise_power: dbm_to_watts(self.noise_dbm),
            bandwidth: self.bandwidth_hz,
            slot_len: self.slot_s,
            v_max: self.vmax_mps,
            content_bits: self.content_mb * BITS_PER_MB,
        }
    }
}
