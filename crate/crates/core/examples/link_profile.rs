//! Derive the four link-success probabilities from a physical scenario and
//! check each against a Monte Carlo estimate.
//!
//! cargo run --example link_profile -- [scenario.toml]

use cogmac::phy::{Gains, PerLink, PerReceiver, PerTransmitter};
use cogmac::{PhyScenario, Receiver, Transmitter};

fn main() -> cogmac::Result<()> {
    let scenario = match std::env::args().nth(1) {
        Some(path) => PhyScenario::load(path)?,
        None => PhyScenario {
            gains: Gains::Geometric {
                tx_power: PerTransmitter { p: 1.0, s: 0.6 },
                distance: PerLink {
                    p_dp: 1.0,
                    p_ds: 1.6,
                    s_dp: 1.4,
                    s_ds: 0.9,
                },
                pathloss_exponent: 3.5,
            },
            fading_mean: PerLink::uniform(1.0),
            noise: PerReceiver::uniform(0.05),
            threshold: PerReceiver::uniform(1.0),
        },
    };
    let profile = scenario.derive_link_profile()?;

    use Receiver::*;
    use Transmitter::*;
    let both = [Primary, Secondary];
    let links: [(&str, Transmitter, &[Transmitter], Receiver); 4] = [
        ("p11", Primary, &[Primary], PrimaryDest),
        ("p112", Primary, &both, PrimaryDest),
        ("p22", Secondary, &[Secondary], SecondaryDest),
        ("p212", Secondary, &both, SecondaryDest),
    ];
    println!("link  closed form   monte carlo (10^6)     z");
    for (i, (name, tx, active, rx)) in links.into_iter().enumerate() {
        let exact = scenario.success_probability(tx, active, rx)?;
        let mc = scenario.mc_success_estimate(tx, active, rx, 1_000_000, i as u64)?;
        let z = (exact - mc.probability) / mc.std_error;
        println!(
            "{name:<5} {exact:.8}    {:.6} ± {:.1e}   {z:+.2}",
            mc.probability, mc.std_error
        );
    }
    println!("\nprofile: {profile}");
    Ok(())
}
