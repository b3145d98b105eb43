//! Sweep λ for a preset and write the rows as CSV.
//!
//! cargo run --example sweep_to_csv -- [out.csv]

use std::path::PathBuf;

use cogmac::{read_csv, run_sweep, ExperimentSpec, Preset, SimSettings, Sweep, SweepVar};

fn main() -> cogmac::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fig4_vs_lambda.csv"));
    let mut spec = ExperimentSpec::preset(Preset::Fig4);
    spec.q = 0.9;
    spec.sweep = Some(Sweep::range(SweepVar::Lambda, 0.0, 0.6, 0.05)?);
    spec.simulation = Some(SimSettings {
        slots: 200_000,
        ..SimSettings::default()
    });
    spec.out = Some(out.clone());

    let rows = run_sweep(&spec)?;
    let unstable = rows.iter().filter(|r| !r.stable).count();
    println!(
        "wrote {} rows ({unstable} unstable) to {}",
        rows.len(),
        out.display()
    );
    for row in read_csv(&out)? {
        println!("{}", row.csv_fields().join(","));
    }
    Ok(())
}
