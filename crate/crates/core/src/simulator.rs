//! Slot-level Monte Carlo simulation of the access protocol.
//!
//! Each slot:
//!
//! 1. the primary queue length `Q` is observed;
//! 2. the primary transmits iff `Q ≥ 1`; the secondary transmits always when
//!    `Q = 0`, with probability `q` when `1 ≤ Q ≤ M`, never when `Q > M`;
//! 3. decoding succeeds independently at each destination with the solo or
//!    joint probability from the link profile;
//! 4. a decoded primary packet leaves the queue;
//! 5. a new packet arrives with probability λ and can first be served in the
//!    next slot.
//!
//! Statistics are collected after the warm-up. Standard errors use batch
//! means: the counted window of every replication is split into
//! [`BATCHES_PER_REPLICATION`] contiguous batches, and the spread of all batch
//! means across all replications gives the standard error of the pooled mean.
//!
//! # Reproducibility
//!
//! Replication `r` draws from `ChaCha8Rng::seed_from_u64(seed)` with
//! `set_stream(r)`. Replications may run in parallel; the statistics do not
//! depend on scheduling.

use std::fmt;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::phy::LinkSuccessProfile;
use crate::queue::ProtocolParams;

pub const BATCHES_PER_REPLICATION: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub params: ProtocolParams,
    pub profile: LinkSuccessProfile,
    /// Total slots per replication, warm-up included.
    pub slots: u64,
    /// Leading slots excluded from the statistics; must be `< slots`.
    pub warmup: u64,
    pub seed: u64,
    pub replications: usize,
}

impl SimConfig {
    /// One replication with the default warm-up.
    pub fn new(params: ProtocolParams, profile: LinkSuccessProfile, slots: u64, seed: u64) -> Self {
        SimConfig {
            params,
            profile,
            slots,
            warmup: Self::default_warmup(params.m).min(slots.saturating_sub(1)),
            seed,
            replications: 1,
        }
    }

    /// `max(10^4, 100·M)` slots.
    pub fn default_warmup(m: usize) -> u64 {
        10_000u64.max(100 * m as u64)
    }

    pub fn with_replications(mut self, replications: usize) -> Self {
        self.replications = replications;
        self
    }

    pub fn with_warmup(mut self, warmup: u64) -> Self {
        self.warmup = warmup;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.profile.validate()?;
        if self.slots == 0 {
            return Err(Error::param("slots", "must be at least 1"));
        }
        if self.warmup >= self.slots {
            return Err(Error::param(
                "warmup",
                format!("{} must be below slots = {}", self.warmup, self.slots),
            ));
        }
        if self.replications == 0 {
            return Err(Error::param("replications", "must be at least 1"));
        }
        Ok(())
    }

    fn counted_slots(&self) -> u64 {
        self.slots - self.warmup
    }
}

/// What happened in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotEvent {
    pub slot: u64,
    /// Queue length at the start of the slot.
    pub queue: u64,
    pub primary_tx: bool,
    pub secondary_tx: bool,
    pub primary_ok: bool,
    pub secondary_ok: bool,
}

fn pair_code(primary: bool, secondary: bool) -> &'static str {
    match (primary, secondary) {
        (false, false) => "-",
        (true, false) => "P",
        (false, true) => "S",
        (true, true) => "PS",
    }
}

impl SlotEvent {
    pub const TRACE_HEADER: &'static str = "# slot queue tx ok";

    /// One trace line: `slot queue tx ok`, with `tx`/`ok` one of `-`, `P`, `S`, `PS`.
    pub fn trace_line(&self) -> String {
        format!(
            "{} {} {} {}",
            self.slot,
            self.queue,
            pair_code(self.primary_tx, self.secondary_tx),
            pair_code(self.primary_ok, self.secondary_ok)
        )
    }

    pub fn parse_trace_line(line: &str) -> Option<SlotEvent> {
        let mut fields = line.split_whitespace();
        let slot = fields.next()?.parse().ok()?;
        let queue = fields.next()?.parse().ok()?;
        let decode = |s: &str| match s {
            "-" => Some((false, false)),
            "P" => Some((true, false)),
            "S" => Some((false, true)),
            "PS" => Some((true, true)),
            _ => None,
        };
        let (primary_tx, secondary_tx) = decode(fields.next()?)?;
        let (primary_ok, secondary_ok) = decode(fields.next()?)?;
        if fields.next().is_some() {
            return None;
        }
        Some(SlotEvent {
            slot,
            queue,
            primary_tx,
            secondary_tx,
            primary_ok,
            secondary_ok,
        })
    }
}

/// Post-warm-up counters of one batch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BatchCounts {
    pub slots: u64,
    pub empty: u64,
    pub band: u64,
    pub above: u64,
    pub secondary_successes: u64,
    pub primary_departures: u64,
}

impl BatchCounts {
    fn add(&mut self, other: &BatchCounts) {
        self.slots += other.slots;
        self.empty += other.empty;
        self.band += other.band;
        self.above += other.above;
        self.secondary_successes += other.secondary_successes;
        self.primary_departures += other.primary_departures;
    }

    fn metric(&self, metric: Metric) -> f64 {
        let n = self.slots as f64;
        let count = match metric {
            Metric::FracEmpty => self.empty,
            Metric::FracBand => self.band,
            Metric::FracAbove => self.above,
            Metric::TSecondary => self.secondary_successes,
            Metric::TPrimary => self.primary_departures,
            Metric::TAggregate => self.secondary_successes + self.primary_departures,
        };
        count as f64 / n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Metric {
    FracEmpty,
    FracBand,
    FracAbove,
    TSecondary,
    TPrimary,
    TAggregate,
}

/// Raw outcome of one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationStats {
    pub index: usize,
    /// Totals over the counted window; `empty + band + above == slots` exactly.
    pub totals: BatchCounts,
    pub batches: Vec<BatchCounts>,
    /// Arrivals during the counted window.
    pub arrivals: u64,
    /// Queue length at the start of the first counted slot.
    pub queue_at_warmup: u64,
    /// Queue length after the last slot.
    pub final_queue: u64,
}

impl ReplicationStats {
    pub fn frac_empty(&self) -> f64 {
        self.totals.metric(Metric::FracEmpty)
    }
    pub fn frac_band(&self) -> f64 {
        self.totals.metric(Metric::FracBand)
    }
    pub fn frac_above(&self) -> f64 {
        self.totals.metric(Metric::FracAbove)
    }
    pub fn t_secondary(&self) -> f64 {
        self.totals.metric(Metric::TSecondary)
    }
    pub fn t_primary(&self) -> f64 {
        self.totals.metric(Metric::TPrimary)
    }
}

/// A point estimate with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// `None` when fewer than two independent samples are available.
    pub std_error: Option<f64>,
    /// Half-width of the 95% confidence interval; present only with ≥ 2
    /// replications.
    pub ci_half_width: Option<f64>,
}

impl Estimate {
    /// Whether `value` lies within `mean ± k·std_error` (plus a 1e-12 absolute
    /// allowance for round-off). Without a standard error, only exact equality
    /// within that allowance passes.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        (value - self.mean).abs() <= k * self.std_error.unwrap_or(0.0) + 1e-12
    }

    fn from_samples(samples: &[f64], with_ci: bool) -> Estimate {
        let n = samples.len();
        let mean = samples.iter().sum::<f64>() / n as f64;
        if n < 2 {
            return Estimate {
                mean,
                std_error: None,
                ci_half_width: None,
            };
        }
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        Estimate {
            mean,
            std_error: Some(se),
            ci_half_width: with_ci.then(|| t_quantile_975(n - 1) * se),
        }
    }
}

fn t_quantile_975(dof: usize) -> f64 {
    StudentsT::new(0.0, 1.0, dof as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975)
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.mean)?;
        if let Some(se) = self.std_error {
            write!(f, "  se {se:.2e}")?;
        }
        if let Some(hw) = self.ci_half_width {
            write!(f, "  ±{hw:.2e} (95%)")?;
        }
        Ok(())
    }
}

/// Aggregated simulation output.
#[derive(Debug, Clone, PartialEq)]
pub struct SimStats {
    pub replications: Vec<ReplicationStats>,
    pub frac_empty: Estimate,
    pub frac_band: Estimate,
    pub frac_above: Estimate,
    pub t_secondary: Estimate,
    pub t_primary: Estimate,
    /// `t_primary + t_secondary`, estimated jointly per batch.
    pub t_aggregate: Estimate,
    /// Mean final queue length; uncertainty across replications.
    pub final_queue: Estimate,
}

impl SimStats {
    fn aggregate(replications: Vec<ReplicationStats>) -> SimStats {
        let with_ci = replications.len() >= 2;
        let estimate = |metric: Metric| {
            let batch_means: Vec<f64> = replications
                .iter()
                .flat_map(|r| r.batches.iter().map(move |b| b.metric(metric)))
                .collect();
            let rep_means: Vec<f64> = replications
                .iter()
                .map(|r| r.totals.metric(metric))
                .collect();
            let mut est = Estimate::from_samples(&batch_means, with_ci);
            // Replications share the window length, so this equals the pooled mean.
            est.mean = rep_means.iter().sum::<f64>() / rep_means.len() as f64;
            est
        };
        let finals: Vec<f64> = replications.iter().map(|r| r.final_queue as f64).collect();
        SimStats {
            frac_empty: estimate(Metric::FracEmpty),
            frac_band: estimate(Metric::FracBand),
            frac_above: estimate(Metric::FracAbove),
            t_secondary: estimate(Metric::TSecondary),
            t_primary: estimate(Metric::TPrimary),
            t_aggregate: estimate(Metric::TAggregate),
            final_queue: Estimate::from_samples(&finals, with_ci),
            replications,
        }
    }
}

impl fmt::Display for SimStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counted = self.replications.first().map_or(0, |r| r.totals.slots);
        writeln!(
            f,
            "replications  {} x {} counted slots",
            self.replications.len(),
            counted
        )?;
        writeln!(f, "frac_empty    {}", self.frac_empty)?;
        writeln!(f, "frac_band     {}", self.frac_band)?;
        writeln!(f, "frac_above    {}", self.frac_above)?;
        writeln!(f, "T_primary     {}", self.t_primary)?;
        writeln!(f, "T_secondary   {}", self.t_secondary)?;
        writeln!(f, "T_aggregate   {}", self.t_aggregate)?;
        write!(f, "final_queue   {}", self.final_queue)
    }
}

fn replication_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn simulate<F>(config: &SimConfig, index: usize, mut observe: F) -> io::Result<ReplicationStats>
where
    F: FnMut(&SlotEvent) -> io::Result<()>,
{
    let ProtocolParams { lambda, q, m } = config.params;
    let m = m as u64;
    let LinkSuccessProfile {
        p11,
        p112,
        p22,
        p212,
    } = config.profile;
    let counted = config.counted_slots();
    let batches = (BATCHES_PER_REPLICATION as u64).min(counted) as usize;
    let mut rng = replication_rng(config.seed, index);

    let mut queue = 0u64;
    let mut queue_at_warmup = 0u64;
    let mut arrivals = 0u64;
    let mut batch_stats = vec![BatchCounts::default(); batches];

    for slot in 0..config.slots {
        if slot == config.warmup {
            queue_at_warmup = queue;
        }
        let primary_tx = queue >= 1;
        let secondary_tx = if queue == 0 {
            true
        } else if queue <= m {
            rng.random::<f64>() < q
        } else {
            false
        };
        let primary_ok = primary_tx && rng.random::<f64>() < if secondary_tx { p112 } else { p11 };
        let secondary_ok =
            secondary_tx && rng.random::<f64>() < if primary_tx { p212 } else { p22 };
        let arrival = rng.random::<f64>() < lambda;

        if slot >= config.warmup {
            let k = slot - config.warmup;
            let b = &mut batch_stats[(k * batches as u64 / counted) as usize];
            b.slots += 1;
            match queue {
                0 => b.empty += 1,
                x if x <= m => b.band += 1,
                _ => b.above += 1,
            }
            b.secondary_successes += secondary_ok as u64;
            b.primary_departures += primary_ok as u64;
            arrivals += arrival as u64;
        }

        observe(&SlotEvent {
            slot,
            queue,
            primary_tx,
            secondary_tx,
            primary_ok,
            secondary_ok,
        })?;

        queue = queue - primary_ok as u64 + arrival as u64;
    }

    let mut totals = BatchCounts::default();
    batch_stats.iter().for_each(|b| totals.add(b));
    Ok(ReplicationStats {
        index,
        totals,
        batches: batch_stats,
        arrivals,
        queue_at_warmup,
        final_queue: queue,
    })
}

fn simulate_untraced(config: &SimConfig, index: usize) -> ReplicationStats {
    simulate(config, index, |_| Ok(())).expect("no-op observer cannot fail")
}

/// A single replication (stream 0). Half-widths are absent; standard errors
/// come from batch means.
pub fn run(config: &SimConfig) -> Result<SimStats> {
    config.validate()?;
    Ok(SimStats::aggregate(vec![simulate_untraced(config, 0)]))
}

/// Like [`run`], writing one [`SlotEvent::trace_line`] per slot (warm-up
/// included) to `sink`.
pub fn run_traced<W: Write>(config: &SimConfig, sink: &mut W) -> Result<SimStats> {
    config.validate()?;
    let io_err = |e| Error::io("trace", e);
    writeln!(sink, "{}", SlotEvent::TRACE_HEADER).map_err(io_err)?;
    let stats = simulate(config, 0, |ev| writeln!(sink, "{}", ev.trace_line())).map_err(io_err)?;
    sink.flush().map_err(io_err)?;
    Ok(SimStats::aggregate(vec![stats]))
}

/// `config.replications` independent replications, run in parallel and
/// aggregated in index order.
pub fn replicate(config: &SimConfig) -> Result<SimStats> {
    config.validate()?;
    let reps: Vec<ReplicationStats> = (0..config.replications)
        .into_par_iter()
        .map(|i| simulate_untraced(config, i))
        .collect();
    Ok(SimStats::aggregate(reps))
}
