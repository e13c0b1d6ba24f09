#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uavsec::scenario::BITS_PER_MB;
use uavsec::{Point2, Scenario64, Trajectory64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn point_in_area(rng: &mut ChaCha8Rng) -> Point2<f64> {
    Point2::new(rng.gen_range(0.0..800.0), rng.gen_range(-300.0..300.0))
}

/// Two-user scenario in an 800 m × 600 m area with randomized positions,
/// speed, bandwidth and demand. Eve keeps at least 50 m from every user.
pub fn random_scenario(rng: &mut ChaCha8Rng) -> Scenario64 {
    let mut s = Scenario64::evaluation_default();
    s.user_positions = vec![point_in_area(rng), point_in_area(rng)];
    s.eve_position = loop {
        let e = point_in_area(rng);
        if s.user_positions.iter().all(|u| u.dist(e) >= 50.0) {
            break e;
        }
    };
    s.uav_start = point_in_area(rng);
    s.v_max = rng.gen_range(20.0..60.0);
    s.bandwidth = rng.gen_range(1e6..1e7);
    s.content_bits = rng.gen_range(1.0..10.0) * BITS_PER_MB;
    s
}

/// `n` waypoints scattered over the area; fine for anything that holds the
/// trajectory fixed.
pub fn scattered_trajectory(rng: &mut ChaCha8Rng, n: usize) -> Trajectory64 {
    Trajectory64::new((0..n).map(|_| point_in_area(rng)).collect())
}
