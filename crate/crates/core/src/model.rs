//! Shared domain types: agent motion parameters, queue parameters, and the
//! position-error-bound (PEB) growth arithmetic every other module consumes.

use crate::error::{Error, Result};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

/// Agent operating mode.
///
/// `Ma` (motion agnostic) keeps the last processed estimate as-is between
/// updates; `Dr` (dead reckoning) extrapolates it with noisy direction
/// feedback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ma,
    Dr,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Ma => write!(f, "ma"),
            Mode::Dr => write!(f, "dr"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ma" => Ok(Mode::Ma),
            "dr" => Ok(Mode::Dr),
            other => Err(Error::InvalidParameter(format!("unknown mode `{other}`"))),
        }
    }
}

/// Agent motion and estimation parameters.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    /// Speed in meters/second.
    pub v: f64,
    pub mode: Mode,
    /// Half-width (radians) of the uniform direction-sensor error in DR mode.
    pub epsilon: f64,
    /// Baseline estimator PEB at the instant an update is generated, in
    /// squared meters. Informational: the age metric subtracts it out.
    pub peb0: f64,
}

impl ModelParams {
    /// Motion-agnostic agent moving at `v` m/s.
    pub fn ma(v: f64) -> Result<Self> {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter(format!("speed must be >= 0, got {v}")));
        }
        Ok(Self { v, mode: Mode::Ma, epsilon: 0.0, peb0: 0.0 })
    }

    /// Dead-reckoning agent with direction errors uniform on `(-epsilon, epsilon)`.
    pub fn dr(v: f64, epsilon: f64) -> Result<Self> {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter(format!("speed must be >= 0, got {v}")));
        }
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "direction error half-width must be >= 0, got {epsilon}"
            )));
        }
        Ok(Self { v, mode: Mode::Dr, epsilon, peb0: 0.0 })
    }

    pub fn with_peb0(mut self, peb0: f64) -> Result<Self> {
        if !(peb0 >= 0.0) {
            return Err(Error::InvalidParameter(format!("peb0 must be >= 0, got {peb0}")));
        }
        self.peb0 = peb0;
        Ok(self)
    }

    /// Mode-dependent scaling of squared-displacement error growth:
    /// 1 for MA, epsilon^2/3 for DR.
    pub fn kappa(&self) -> f64 {
        match self.mode {
            Mode::Ma => 1.0,
            Mode::Dr => self.epsilon * self.epsilon / 3.0,
        }
    }

    /// Exact squared-error factor of one hop given its realized direction
    /// error: 1 in MA mode, `2(1 - cos delta)` in DR mode. `kappa` is the
    /// small-angle expectation of this quantity.
    pub fn hop_error_factor(&self, delta_err: f64) -> f64 {
        match self.mode {
            Mode::Ma => 1.0,
            Mode::Dr => 2.0 * (1.0 - delta_err.cos()),
        }
    }
}

/// Mode-dependent error-growth scale of `params` (see [`ModelParams::kappa`]).
pub fn kappa(params: &ModelParams) -> f64 {
    params.kappa()
}

/// Excess PEB accumulated since the generation waypoint of the freshest
/// processed update: `kappa * v^2 * (sum of squared completed-hop durations
/// + tau^2)` where `tau` is the time spent in the current, incomplete hop.
pub fn peb_excess(completed_hops: &[f64], tau: f64, params: &ModelParams) -> f64 {
    debug_assert!(tau >= 0.0);
    let mut sum = tau * tau;
    for d in completed_hops {
        debug_assert!(*d > 0.0);
        sum += d * d;
    }
    params.kappa() * params.v * params.v * sum
}

/// FCFS queue discipline: arrival letter describes the hop (update
/// generation) process, service letter the transmission time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Discipline {
    Mm1,
    Dm1,
    Md1,
    Dd1,
}

impl Discipline {
    pub const ALL: [Discipline; 4] = [Discipline::Mm1, Discipline::Dm1, Discipline::Md1, Discipline::Dd1];

    /// Hop durations are exponential (`true`) or the constant `1/lambda`.
    pub fn markovian_arrivals(&self) -> bool {
        matches!(self, Discipline::Mm1 | Discipline::Md1)
    }

    /// Service times are exponential (`true`) or the constant `1/mu`.
    pub fn markovian_service(&self) -> bool {
        matches!(self, Discipline::Mm1 | Discipline::Dm1)
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Discipline::Mm1 => "mm1",
            Discipline::Dm1 => "dm1",
            Discipline::Md1 => "md1",
            Discipline::Dd1 => "dd1",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Discipline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['/', '-'], "").as_str() {
            "mm1" => Ok(Discipline::Mm1),
            "dm1" => Ok(Discipline::Dm1),
            "md1" => Ok(Discipline::Md1),
            "dd1" => Ok(Discipline::Dd1),
            other => Err(Error::InvalidParameter(format!("unknown discipline `{other}`"))),
        }
    }
}

/// Arrival/service rates and the polling probability for one queue
/// configuration. Construction rejects configurations without a stationary
/// regime, so the analytic evaluators can assume stability.
#[derive(Debug, Clone, Copy)]
pub struct QueueParams {
    pub discipline: Discipline,
    /// Update (hop) generation rate, 1/s. For deterministic arrivals the
    /// inter-hop period is `1/lambda`.
    pub lambda: f64,
    /// Service rate, 1/s. For deterministic service the service time is `1/mu`.
    pub mu: f64,
    /// Polling probability in (0, 1].
    pub p: f64,
}

impl QueueParams {
    pub fn new(discipline: Discipline, lambda: f64, mu: f64, p: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be > 0, got {lambda}")));
        }
        if !(mu > 0.0) {
            return Err(Error::InvalidParameter(format!("mu must be > 0, got {mu}")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter(format!("p must be in (0, 1], got {p}")));
        }
        let q = Self { discipline, lambda, mu, p };
        match discipline {
            // Deterministic/deterministic never queues as long as the service
            // fits inside one inter-arrival period.
            Discipline::Dd1 => {
                if lambda > mu {
                    return Err(Error::Unstable(format!(
                        "d/d/1 requires service period <= arrival period (lambda = {lambda} > mu = {mu})"
                    )));
                }
            }
            _ => {
                if q.rho() >= 1.0 {
                    return Err(Error::Unstable(format!(
                        "utilization p*lambda/mu = {} must be < 1",
                        q.rho()
                    )));
                }
            }
        }
        Ok(q)
    }

    /// Server utilization of the polled stream, `p * lambda / mu`.
    pub fn rho(&self) -> f64 {
        self.p * self.lambda / self.mu
    }

    /// Inter-hop period `D_a` for deterministic arrivals.
    pub fn arrival_period(&self) -> f64 {
        1.0 / self.lambda
    }

    /// Service period `D_s` for deterministic service.
    pub fn service_period(&self) -> f64 {
        1.0 / self.mu
    }

    /// Rate of the thinned (admitted) update stream.
    pub fn polled_rate(&self) -> f64 {
        self.p * self.lambda
    }
}

/// Map an angle to the half-open interval `(0, 2*pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r == 0.0 {
        TAU
    } else {
        r
    }
}

/// One constant-direction movement segment between waypoints.
#[derive(Debug, Clone, Copy)]
pub struct HopRecord {
    /// Hop duration in seconds; equals one inter-arrival interval of the
    /// update generation process.
    pub duration: f64,
    /// True movement direction, normalized to `(0, 2*pi]`.
    pub theta: f64,
    /// Realized direction-sensor error for this hop (zero in MA mode;
    /// `|delta_err| <= epsilon` in DR mode).
    pub delta_err: f64,
    /// Whether the update generated at this hop's closing waypoint was
    /// admitted to the queue.
    pub polled: bool,
}

impl HopRecord {
    pub fn new(duration: f64, theta: f64, delta_err: f64, polled: bool) -> Result<Self> {
        if !(duration > 0.0) {
            return Err(Error::InvalidParameter(format!("hop duration must be > 0, got {duration}")));
        }
        Ok(Self { duration, theta: normalize_angle(theta), delta_err, polled })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn kappa_by_mode() {
        assert_eq!(ModelParams::ma(5.0).unwrap().kappa(), 1.0);
        close(ModelParams::dr(5.0, 0.1).unwrap().kappa(), 0.01 / 3.0, 1e-15);
        assert_eq!(ModelParams::dr(5.0, 0.0).unwrap().kappa(), 0.0);
    }

    #[test]
    fn peb_excess_examples() {
        let ma = ModelParams::ma(5.0).unwrap();
        close(peb_excess(&[0.1, 0.2], 0.05, &ma), 1.3125, 1e-12);
        assert_eq!(peb_excess(&[], 0.0, &ma), 0.0);
        let dr = ModelParams::dr(5.0, 0.1).unwrap();
        close(peb_excess(&[0.1, 0.2], 0.05, &dr), 1.3125 * (0.01 / 3.0), 1e-12);
    }

    #[test]
    fn kappa_scaling_is_exact() {
        let ma = ModelParams::ma(3.2).unwrap();
        let dr = ModelParams::dr(3.2, 0.37).unwrap();
        let hops = [0.013, 0.4, 0.09, 1.7];
        // Same base sum, scaled by kappa: bit-exact because kappa multiplies last.
        assert_eq!(peb_excess(&hops, 0.21, &dr), dr.kappa() * peb_excess(&hops, 0.21, &ma));
    }

    #[test]
    fn queue_params_stability() {
        assert!(QueueParams::new(Discipline::Mm1, 20.0, 20.0, 0.5).is_ok());
        assert!(matches!(
            QueueParams::new(Discipline::Mm1, 20.0, 20.0, 1.0),
            Err(Error::Unstable(_))
        ));
        // Equal periods are fine for D/D/1, any p.
        assert!(QueueParams::new(Discipline::Dd1, 20.0, 20.0, 1.0).is_ok());
        assert!(matches!(
            QueueParams::new(Discipline::Dd1, 21.0, 20.0, 0.1),
            Err(Error::Unstable(_))
        ));
        assert!(QueueParams::new(Discipline::Md1, 20.0, 20.0, 0.999).is_ok());
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(0.0), TAU);
        assert_eq!(normalize_angle(TAU), TAU);
        close(normalize_angle(-0.5), TAU - 0.5, 1e-15);
        close(normalize_angle(TAU + 1.0), 1.0, 1e-12);
    }

    #[test]
    fn hop_record_rejects_bad_duration() {
        assert!(HopRecord::new(0.0, 1.0, 0.0, false).is_err());
        assert!(HopRecord::new(-1.0, 1.0, 0.0, false).is_err());
    }

    #[test]
    fn exact_hop_factor_matches_small_angle() {
        let dr = ModelParams::dr(1.0, 0.1).unwrap();
        // 2(1 - cos d) ~ d^2 for small d.
        close(dr.hop_error_factor(0.01), 1e-4, 1e-8);
        let ma = ModelParams::ma(1.0).unwrap();
        assert_eq!(ma.hop_error_factor(0.3), 1.0);
    }
}
