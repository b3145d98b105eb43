//! Stationary distribution of the primary queue, checked against a dense
//! numerical solve of the truncated chain.

use cogmac::queue::{geometric_ratios, oracle_truncation};
use cogmac::{
    prob_band, prob_empty, service_rates, stationary_distribution, truncated_solve_oracle, Preset,
    ProtocolParams,
};

fn main() -> cogmac::Result<()> {
    let profile = Preset::Fig3.profile();
    let params = ProtocolParams::new(0.5, 0.9, 3)?;
    let rates = service_rates(&profile, params.q)?;
    let (a, b) = geometric_ratios(&params, &rates);
    println!(
        "mu1 = {:.4}, mu2 = {:.4}, a = {a:.6}, b = {b:.6}",
        rates.mu1, rates.mu2
    );

    let dist = stationary_distribution(&params, &rates)?;
    let n = oracle_truncation(&params, &rates);
    let oracle = truncated_solve_oracle(&params, &rates, n)?;

    println!("\nstate  pi            oracle        |diff|");
    for s in 0..=params.m + 5 {
        let (p, o) = (dist.prob(s), oracle.prob(s));
        println!("{s:>5}  {p:.10}  {o:.10}  {:.1e}", (p - o).abs());
    }
    println!(
        "\nPr(Q=0)      {:.10}  closed form {:.10}",
        dist.pi0,
        prob_empty(&params, &rates)?
    );
    println!(
        "Pr(1<=Q<=M)  {:.10}  closed form {:.10}",
        dist.prob_band,
        prob_band(&params, &rates)?
    );
    println!("Pr(Q>M)      {:.10}", dist.prob_above);
    println!("oracle truncated at {n} states");
    Ok(())
}
