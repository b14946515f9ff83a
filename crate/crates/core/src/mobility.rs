//! Random-waypoint hop generation and trajectory arithmetic.
//!
//! Hop durations double as the inter-arrival times of the update generation
//! process: exponential for Markovian-arrival disciplines, constant
//! `1/lambda` for deterministic ones. The agent moves on an unbounded plane;
//! no pause times, no boundary handling.

use crate::error::{Error, Result};
use crate::model::{HopRecord, Mode, ModelParams, QueueParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::io::{self, Write};

/// Planar position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Inverse-CDF exponential draw, guarded so a pathological uniform of exactly
/// 0 or 1 cannot produce a zero or infinite duration.
fn exp_draw<R: Rng>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.random();
    let d = -(1.0 - u).ln() / rate;
    if d > 0.0 {
        d
    } else {
        f64::MIN_POSITIVE / rate
    }
}

/// Generate the hop sequence covering `horizon` seconds.
///
/// Each hop draws, in fixed order from one stream: duration, direction,
/// direction-sensor error, polling mark. Keeping the order fixed means a
/// change of mode or of `epsilon` leaves the queue sample path untouched,
/// which is what makes matched-seed MA/DR comparisons meaningful.
pub fn generate_hops(
    queue: &QueueParams,
    model: &ModelParams,
    horizon: f64,
    seed: u64,
) -> Result<Vec<HopRecord>> {
    if !(horizon > 0.0) {
        return Err(Error::InvalidParameter(format!("horizon must be > 0, got {horizon}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let markovian = queue.discipline.markovian_arrivals();
    let period = queue.arrival_period();
    let mut hops = Vec::with_capacity((horizon * queue.lambda * 1.05) as usize + 16);
    let mut elapsed = 0.0f64;
    while elapsed < horizon {
        let duration = if markovian { exp_draw(&mut rng, queue.lambda) } else { period };
        let theta = TAU * (1.0 - rng.random::<f64>()); // (0, 2*pi]
        let unit: f64 = 2.0 * rng.random::<f64>() - 1.0;
        let polled = rng.random::<f64>() < queue.p;
        let delta_err = match model.mode {
            Mode::Ma => 0.0,
            Mode::Dr => model.epsilon * unit,
        };
        hops.push(HopRecord { duration, theta, delta_err, polled });
        elapsed += duration;
    }
    Ok(hops)
}

/// Position reached after one hop: `start + v * duration * (cos theta, sin theta)`.
pub fn advance_position(start: Point, hop: &HopRecord, v: f64) -> Point {
    Point {
        x: start.x + v * hop.duration * hop.theta.cos(),
        y: start.y + v * hop.duration * hop.theta.sin(),
    }
}

/// Dead-reckoned position estimate after `hops`, extrapolating with the
/// noisy directions `theta + delta_err`.
pub fn dr_estimate(start_est: Point, hops: &[HopRecord], v: f64) -> Point {
    let mut p = start_est;
    for h in hops {
        let th = h.theta + h.delta_err;
        p.x += v * h.duration * th.cos();
        p.y += v * h.duration * th.sin();
    }
    p
}

/// A hop sequence anchored at an origin; waypoints are derived on demand and
/// are bit-for-bit reproducible from `(seed, params, horizon)`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub origin: Point,
    pub hops: Vec<HopRecord>,
}

impl Trajectory {
    pub fn new(origin: Point, hops: Vec<HopRecord>) -> Self {
        Self { origin, hops }
    }

    /// True positions at hop boundaries, starting with the waypoint reached
    /// at the end of the first hop.
    pub fn waypoints(&self, v: f64) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.hops.len());
        let mut p = self.origin;
        for h in &self.hops {
            p = advance_position(p, h, v);
            out.push(p);
        }
        out
    }
}

/// Write one row per hop:
/// `hop_index, t_start, duration, theta, delta_err, polled, x_waypoint, y_waypoint`.
pub fn write_trajectory_csv<W: Write>(out: &mut W, trajectory: &Trajectory, v: f64) -> io::Result<()> {
    writeln!(out, "hop_index,t_start,duration,theta,delta_err,polled,x_waypoint,y_waypoint")?;
    let mut t = 0.0f64;
    let mut p = trajectory.origin;
    for (i, h) in trajectory.hops.iter().enumerate() {
        p = advance_position(p, h, v);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            i, t, h.duration, h.theta, h.delta_err, h.polled as u8, p.x, p.y
        )?;
        t += h.duration;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Discipline;
    use std::f64::consts::PI;

    fn ma() -> ModelParams {
        ModelParams::ma(5.0).unwrap()
    }

    #[test]
    fn deterministic_arrivals_tile_the_horizon() {
        let q = QueueParams::new(Discipline::Dd1, 20.0, 20.0, 1.0).unwrap();
        let hops = generate_hops(&q, &ma(), 1.0, 7).unwrap();
        assert_eq!(hops.len(), 20);
        assert!(hops.iter().all(|h| h.duration == 0.05));
        assert!(hops.iter().all(|h| h.polled), "p = 1 must poll every hop");
    }

    #[test]
    fn rejects_bad_horizon() {
        let q = QueueParams::new(Discipline::Mm1, 20.0, 20.0, 0.5).unwrap();
        assert!(generate_hops(&q, &ma(), 0.0, 1).is_err());
        assert!(generate_hops(&q, &ma(), -3.0, 1).is_err());
    }

    #[test]
    fn same_seed_same_hops() {
        let q = QueueParams::new(Discipline::Mm1, 20.0, 20.0, 0.5).unwrap();
        let a = generate_hops(&q, &ma(), 50.0, 99).unwrap();
        let b = generate_hops(&q, &ma(), 50.0, 99).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.duration, y.duration);
            assert_eq!(x.theta, y.theta);
            assert_eq!(x.polled, y.polled);
        }
    }

    #[test]
    fn epsilon_does_not_perturb_queue_path() {
        let q = QueueParams::new(Discipline::Mm1, 20.0, 20.0, 0.5).unwrap();
        let a = generate_hops(&q, &ma(), 50.0, 42).unwrap();
        let dr = ModelParams::dr(5.0, 0.3).unwrap();
        let b = generate_hops(&q, &dr, 50.0, 42).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.duration, y.duration);
            assert_eq!(x.theta, y.theta);
            assert_eq!(x.polled, y.polled);
            assert!(y.delta_err.abs() <= 0.3);
            assert_eq!(x.delta_err, 0.0);
        }
    }

    #[test]
    fn advance_position_axis_aligned() {
        let h = HopRecord::new(0.1, PI / 2.0, 0.0, false).unwrap();
        let p = advance_position(Point::ORIGIN, &h, 5.0);
        assert!(p.x.abs() < 1e-15 && (p.y - 0.5).abs() < 1e-15);

        let h = HopRecord::new(0.2, PI, 0.0, false).unwrap();
        let p = advance_position(Point::new(1.0, 1.0), &h, 5.0);
        assert!(p.x.abs() < 1e-12 && (p.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dr_estimate_matches_truth_without_error() {
        let hops = vec![
            HopRecord::new(0.1, 1.0, 0.0, false).unwrap(),
            HopRecord::new(0.3, 4.0, 0.0, false).unwrap(),
        ];
        let truth = hops.iter().fold(Point::ORIGIN, |p, h| advance_position(p, h, 5.0));
        let est = dr_estimate(Point::ORIGIN, &hops, 5.0);
        assert!(truth.distance(&est) < 1e-12);
    }

    #[test]
    fn dr_estimate_rotated_displacement() {
        let h = HopRecord::new(0.1, TAU, PI / 2.0, false).unwrap(); // theta = 2*pi == 0 direction
        let est = dr_estimate(Point::ORIGIN, &[h], 5.0);
        assert!(est.x.abs() < 1e-12 && (est.y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn trajectory_csv_shape() {
        let q = QueueParams::new(Discipline::Dd1, 10.0, 20.0, 1.0).unwrap();
        let hops = generate_hops(&q, &ma(), 0.5, 3).unwrap();
        let tr = Trajectory::new(Point::ORIGIN, hops);
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &tr, 5.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "hop_index,t_start,duration,theta,delta_err,polled,x_waypoint,y_waypoint"
        );
        assert_eq!(lines.count(), tr.hops.len());
    }
}
