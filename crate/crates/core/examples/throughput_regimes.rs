//! Aggregate throughput against q for the four reference link profiles.
//! Strong multipacket reception rewards the secondary for transmitting
//! alongside the primary; weak reception punishes it.

use cogmac::{aggregate_throughput, service_rates, Preset, ProtocolParams};

fn main() -> cogmac::Result<()> {
    let lambda = 0.3;
    let qs: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    print!("{:>6}", "q");
    for preset in Preset::ALL {
        for m in [1, 4] {
            print!("  {:>9}", format!("{} M={m}", preset.name()));
        }
    }
    println!();
    for &q in &qs {
        print!("{q:>6.1}");
        for preset in Preset::ALL {
            let profile = preset.profile();
            let rates = service_rates(&profile, q)?;
            for m in [1, 4] {
                let params = ProtocolParams::new(lambda, q, m)?;
                let report = aggregate_throughput(&params, &rates, &profile)?;
                print!("  {:>9.5}", report.require_stable()?);
            }
        }
        println!();
    }
    Ok(())
}
