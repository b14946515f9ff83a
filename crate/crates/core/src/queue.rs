//! Event-driven FCFS single-server queue over the polled update epochs.
//!
//! The queue has an infinite buffer, no preemption, and never discards an
//! admitted update; thinning happens at generation time, before this module
//! is involved.

use crate::error::{Error, Result};
use crate::model::QueueParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{self, Write};

/// Timing record of one admitted update.
#[derive(Debug, Clone, Copy)]
pub struct UpdateRecord {
    /// Generation epoch (the polled waypoint), seconds.
    pub gen_time: f64,
    pub service_start: f64,
    pub depart_time: f64,
}

impl UpdateRecord {
    /// Waiting time `W_i`.
    pub fn waiting(&self) -> f64 {
        self.service_start - self.gen_time
    }

    /// Service time `S_i`.
    pub fn service(&self) -> f64 {
        self.depart_time - self.service_start
    }

    /// System time `T_i = W_i + S_i`.
    pub fn system_time(&self) -> f64 {
        self.depart_time - self.gen_time
    }
}

fn exp_draw<R: Rng>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.random();
    let d = -(1.0 - u).ln() / rate;
    if d > 0.0 {
        d
    } else {
        f64::MIN_POSITIVE / rate
    }
}

/// Run the Lindley recursion over strictly increasing arrival epochs:
/// `service_start_i = max(gen_i, depart_{i-1})`. Service times are
/// exponential(`mu`) or the constant `1/mu` depending on the discipline's
/// service letter.
pub fn simulate_queue(polled_epochs: &[f64], queue: &QueueParams, seed: u64) -> Result<Vec<UpdateRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let markovian = queue.discipline.markovian_service();
    let period = queue.service_period();
    let mut records = Vec::with_capacity(polled_epochs.len());
    let mut prev_depart = f64::NEG_INFINITY;
    let mut prev_gen = f64::NEG_INFINITY;
    for (i, &gen) in polled_epochs.iter().enumerate() {
        if gen <= prev_gen {
            return Err(Error::NonMonotoneEpochs(i));
        }
        prev_gen = gen;
        let service_start = gen.max(prev_depart);
        let service = if markovian { exp_draw(&mut rng, queue.mu) } else { period };
        let depart_time = service_start + service;
        prev_depart = depart_time;
        records.push(UpdateRecord { gen_time: gen, service_start, depart_time });
    }
    Ok(records)
}

/// Empirical CDF of the waiting times evaluated on `grid`.
pub fn empirical_waiting_cdf(records: &[UpdateRecord], grid: &[f64]) -> Result<Vec<f64>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("empirical_waiting_cdf needs at least one record"));
    }
    let mut waits: Vec<f64> = records.iter().map(|r| r.waiting()).collect();
    waits.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = waits.len() as f64;
    Ok(grid
        .iter()
        .map(|&w| {
            let count = waits.partition_point(|&x| x <= w);
            count as f64 / n
        })
        .collect())
}

/// Write one row per update: `gen_time, service_start, depart_time`.
pub fn write_updates_csv<W: Write>(out: &mut W, records: &[UpdateRecord]) -> io::Result<()> {
    writeln!(out, "gen_time,service_start,depart_time")?;
    for r in records {
        writeln!(out, "{},{},{}", r.gen_time, r.service_start, r.depart_time)?;
    }
    Ok(())
}
