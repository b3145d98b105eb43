//! Around λ = μ2 the analytical model stops applying and the simulated queue
//! grows linearly.

use cogmac::{aggregate_throughput, run, service_rates, Preset, ProtocolParams, SimConfig};

fn main() -> cogmac::Result<()> {
    let profile = Preset::Fig3.profile();
    let (q, m) = (0.9, 2);
    let rates = service_rates(&profile, q)?;
    let slots = 1_000_000;
    println!("mu2 = {}", rates.mu2);
    println!(
        "{:>6} {:>8} {:>12} {:>12} {:>14}",
        "lambda", "stable", "T_aggr", "final Q", "(λ-μ2)·slots"
    );
    for lambda in [0.6, 0.7, 0.75, 0.78, 0.8, 0.82, 0.85, 0.9] {
        let params = ProtocolParams::new(lambda, q, m)?;
        let report = aggregate_throughput(&params, &rates, &profile)?;
        let sim = run(&SimConfig::new(params, profile, slots, 3))?;
        let taggr = match report.require_stable() {
            Ok(t) => format!("{t:.6}"),
            Err(_) => "refused".into(),
        };
        println!(
            "{lambda:>6} {:>8} {taggr:>12} {:>12} {:>14.0}",
            report.stable,
            sim.replications[0].final_queue,
            ((lambda - rates.mu2) * slots as f64).max(0.0)
        );
    }
    Ok(())
}
