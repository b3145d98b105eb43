//! Analytics-vs-simulation report across the congestion limit, as printed by
//! `cogmac compare`.

use std::process::ExitCode;

use cogmac::{compare, ExperimentSpec, Preset, SimSettings, Sweep, SweepVar};

fn main() -> cogmac::Result<ExitCode> {
    let mut spec = ExperimentSpec::preset(Preset::Fig3);
    spec.sweep = Some(Sweep::list(SweepVar::M, vec![1.0, 2.0, 4.0, 10.0])?);
    spec.simulation = Some(SimSettings::default());
    let report = compare(&spec)?;
    println!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
