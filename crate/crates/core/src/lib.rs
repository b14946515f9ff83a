//! Age of positioning (AoP) for a random-waypoint agent whose position
//! updates travel through a single FCFS server.
//!
//! The agent picks a uniform direction at every waypoint and moves at
//! constant speed; each waypoint generates a position update that is
//! admitted to the transmission queue with probability `p` (polling) and
//! discarded otherwise. Freshness is measured as the time-averaged excess
//! position error bound (PEB) relative to an instantly processed update.
//! The crate provides both sides of the analysis:
//!
//! - closed-form AoP under M/M/1, D/M/1, M/D/1 and D/D/1 disciplines
//!   ([`analytic`]), including the D/M/1 embedded-chain fixed point and the
//!   M/D/1 waiting-time series machinery;
//! - a discrete-event simulator ([`mobility`], [`queue`]) with two
//!   independent Monte Carlo estimators of the same sawtooth integral
//!   ([`estimator`]) and a replication harness with batch-means confidence
//!   intervals ([`experiment`]).

pub mod analytic;
pub mod error;
pub mod estimator;
pub mod experiment;
pub mod mobility;
pub mod model;
pub mod numeric;
pub mod queue;
pub mod stats;

pub use analytic::{
    aop_closed_form, aop_dd1, aop_dm1, aop_md1, aop_mm1, fw_cdf, g_of_s, optimal_p, solve_beta,
    t_k, AopBreakdown, BetaSolution, Md1Waiting, PSearch,
};
pub use error::{Error, Result};
pub use estimator::{
    aop_from_cycles, aop_renewal_form, cycle_decompose, integrate_aop, whole_cycle_integral,
    whole_cycle_window, AopEstimate, CycleStats, EstimatorMethod,
};
pub use experiment::{run_experiment, run_replication, ExperimentOutcome, RepOutcome, SimConfig, WarmupSpec};
pub use mobility::{advance_position, dr_estimate, generate_hops, Point, Trajectory};
pub use model::{kappa, peb_excess, Discipline, HopRecord, Mode, ModelParams, QueueParams};
pub use queue::{empirical_waiting_cdf, simulate_queue, UpdateRecord};
