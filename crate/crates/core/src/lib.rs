//! Network-level analysis of a cognitive access protocol in which a saturated
//! secondary transmitter shares a multipacket-reception channel with a bursty
//! primary.
//!
//! The secondary always transmits when the primary queue is empty, transmits
//! with probability `q` while the queue holds between 1 and `M` packets, and
//! stays silent above the congestion limit `M`.
//!
//! - [`phy`]: link-success probabilities from an SINR-threshold Rayleigh model,
//!   in closed form and by Monte Carlo.
//! - [`queue`]: the primary queue's birth–death chain: stationary
//!   distribution, stability, closed forms and a dense numerical oracle.
//! - [`throughput`]: secondary and aggregate throughput.
//! - [`simulator`]: a slot-level Monte Carlo simulator with replications and
//!   batch-means confidence intervals.
//! - [`experiment`]: presets, sweeps, CSV output and analytics-vs-simulation
//!   comparison, as driven by the `cogmac` binary.
//!
//! ```
//! use cogmac::{aggregate_throughput, service_rates, Preset, ProtocolParams};
//!
//! let profile = Preset::Fig3.profile();
//! let params = ProtocolParams::new(0.3, 0.9, 2)?;
//! let rates = service_rates(&profile, params.q)?;
//! let report = aggregate_throughput(&params, &rates, &profile)?;
//! assert!((report.t_aggregate.unwrap() - 1.0574252483).abs() < 1e-9);
//! # Ok::<(), cogmac::Error>(())
//! ```

pub mod error;
pub mod experiment;
pub mod phy;
pub mod queue;
pub mod simulator;
pub mod throughput;

pub use error::{Error, Result};
pub use experiment::{
    compare, load_spec, read_csv, run_sweep, write_csv, CompareReport, ExperimentSpec, Preset,
    SimSettings, Sweep, SweepRow, SweepVar,
};
pub use phy::{LinkSuccessProfile, PhyScenario, Receiver, Transmitter};
pub use queue::{
    is_stable, prob_band, prob_empty, service_rates, stationary_distribution,
    truncated_solve_oracle, ProtocolParams, QueueDistribution, ServiceRates,
};
pub use simulator::{replicate, run, Estimate, SimConfig, SimStats};
pub use throughput::{aggregate_throughput, secondary_throughput, ThroughputReport};
