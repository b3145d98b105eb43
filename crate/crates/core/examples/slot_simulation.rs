//! Simulate the slotted protocol with replications and compare each estimate
//! with the chain's prediction. Writes the first 20 slots of a trace.

use std::io::Write;

use cogmac::simulator::run_traced;
use cogmac::{
    aggregate_throughput, replicate, service_rates, stationary_distribution, Preset,
    ProtocolParams, SimConfig,
};

fn main() -> cogmac::Result<()> {
    let profile = Preset::Fig4.profile();
    let params = ProtocolParams::new(0.3, 0.6, 2)?;
    let rates = service_rates(&profile, params.q)?;
    let dist = stationary_distribution(&params, &rates)?;
    let report = aggregate_throughput(&params, &rates, &profile)?;

    let config = SimConfig::new(params, profile, 500_000, 42).with_replications(8);
    let sim = replicate(&config)?;
    println!("{sim}\n");
    for (name, analytic, est) in [
        ("pi0", dist.pi0, sim.frac_empty),
        ("band", dist.prob_band, sim.frac_band),
        ("above", dist.prob_above, sim.frac_above),
        ("T_s", report.t_secondary.unwrap(), sim.t_secondary),
        ("T_aggr", report.t_aggregate.unwrap(), sim.t_aggregate),
    ] {
        let se = est.std_error.unwrap();
        println!(
            "{name:<7} analytic {analytic:.6}  sim {:.6}  z {:+.2}",
            est.mean,
            (est.mean - analytic) / se
        );
    }

    let short = SimConfig::new(params, profile, 20, 42).with_warmup(0);
    let mut trace = Vec::new();
    run_traced(&short, &mut trace)?;
    println!();
    std::io::stdout().write_all(&trace).expect("stdout");
    Ok(())
}
