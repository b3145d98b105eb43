use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cogmac::experiment::{self, ExperimentSpec, SimSettings};
use cogmac::phy::{PhyScenario, Receiver, Transmitter};
use cogmac::simulator::{self, SimConfig};
use cogmac::{aggregate_throughput, service_rates, Error, LinkSuccessProfile, Preset, Sweep};

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_COMPARE_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cogmac",
    version,
    about = "Cognitive access protocol: queue, throughput and simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytical throughput at one operating point.
    Analyze(Common),
    /// Simulate one operating point.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Write a per-slot event trace of replication 0.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Sweep one parameter and emit CSV (stdout unless --out).
    Sweep(Common),
    /// Check analytical values against simulation at every sweep point.
    Compare(Common),
    /// Derive the link-success profile from a physical scenario.
    Phy {
        #[arg(long)]
        scenario: PathBuf,
        /// Also estimate each probability by Monte Carlo with this many samples.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = experiment::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// TOML experiment spec; other flags override its values.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// fig3 | fig4 | fig5 | fig6
    #[arg(long)]
    preset: Option<Preset>,
    /// p11,p112,p22,p212
    #[arg(long)]
    profile: Option<LinkSuccessProfile>,
    /// Physical scenario TOML from which to derive the profile.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long = "M")]
    m: Option<usize>,
    /// var:start:stop:step, var one of q, lambda, M
    #[arg(long)]
    sweep: Option<Sweep>,
    #[arg(long)]
    slots: Option<u64>,
    #[arg(long)]
    warmup: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn simulation_flags(&self) -> bool {
        self.slots.is_some() || self.warmup.is_some() || self.reps.is_some() || self.seed.is_some()
    }

    fn build(&self, force_simulation: bool) -> cogmac::Result<ExperimentSpec> {
        let sources = [
            self.preset.is_some(),
            self.profile.is_some(),
            self.scenario.is_some(),
        ];
        if sources.iter().filter(|s| **s).count() > 1 {
            return Err(Error::Parameter {
                name: "preset".into(),
                reason: "--preset, --profile and --scenario are mutually exclusive".into(),
            });
        }
        let mut spec = match &self.spec {
            Some(path) => experiment::load_spec(path)?,
            None => ExperimentSpec::preset(Preset::Fig3),
        };
        if let Some(p) = self.preset {
            spec.profile = p.profile();
        } else if let Some(p) = self.profile {
            spec.profile = p;
        } else if let Some(path) = &self.scenario {
            spec.profile = PhyScenario::load(path)?.derive_link_profile()?;
        } else if self.spec.is_none() {
            return Err(Error::Parameter {
                name: "preset".into(),
                reason: "no link profile: pass --preset, --profile, --scenario or --spec".into(),
            });
        }
        if let Some(l) = self.lambda {
            spec.lambda = l;
        }
        if let Some(q) = self.q {
            spec.q = q;
        }
        if let Some(m) = self.m {
            spec.m = m;
        }
        if let Some(s) = &self.sweep {
            spec.sweep = Some(s.clone());
        }
        if force_simulation || self.simulation_flags() || spec.simulation.is_some() {
            let mut sim = spec.simulation.unwrap_or_default();
            if let Some(v) = self.slots {
                sim.slots = v;
            }
            if self.warmup.is_some() {
                sim.warmup = self.warmup;
            }
            if let Some(v) = self.reps {
                sim.replications = v;
            }
            if let Some(v) = self.seed {
                sim.seed = v;
            }
            spec.simulation = Some(sim);
        }
        if self.out.is_some() {
            spec.out = self.out.clone();
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn sim_config(spec: &ExperimentSpec, sim: &SimSettings) -> cogmac::Result<SimConfig> {
    let params = cogmac::ProtocolParams::new(spec.lambda, spec.q, spec.m)?;
    let mut config = SimConfig::new(params, spec.profile, sim.slots, sim.seed)
        .with_replications(sim.replications);
    if let Some(w) = sim.warmup {
        config.warmup = w;
    }
    Ok(config)
}

fn execute(command: Command) -> cogmac::Result<u8> {
    match command {
        Command::Analyze(common) => {
            let spec = common.build(false)?;
            let params = cogmac::ProtocolParams::new(spec.lambda, spec.q, spec.m)?;
            let rates = service_rates(&spec.profile, params.q)?;
            let report = aggregate_throughput(&params, &rates, &spec.profile)?;
            report.require_stable()?;
            println!("{report}");
        }
        Command::Simulate { common, trace } => {
            let spec = common.build(true)?;
            let config = sim_config(&spec, spec.simulation.as_ref().expect("forced"))?;
            if let Some(path) = &trace {
                let file = File::create(path).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                simulator::run_traced(&config, &mut BufWriter::new(file)).map_err(|e| match e {
                    Error::Io { source, .. } => Error::Io {
                        path: path.clone(),
                        source,
                    },
                    other => other,
                })?;
            }
            println!("{}", simulator::replicate(&config)?);
        }
        Command::Sweep(common) => {
            let spec = common.build(false)?;
            let rows = experiment::run_sweep(&spec)?;
            if spec.out.is_none() {
                experiment::write_csv_to(io::stdout().lock(), &rows).map_err(|e| Error::Io {
                    path: "<stdout>".into(),
                    source: e.into(),
                })?;
            }
        }
        Command::Compare(common) => {
            let spec = common.build(true)?;
            let report = experiment::compare(&spec)?;
            println!("{report}");
            if !report.passed() {
                return Ok(EXIT_COMPARE_FAILED);
            }
        }
        Command::Phy {
            scenario,
            samples,
            seed,
        } => {
            let scenario = PhyScenario::load(&scenario)?;
            let profile = scenario.derive_link_profile()?;
            use Receiver::*;
            use Transmitter::*;
            let both = [Primary, Secondary];
            let links: [(&str, f64, Transmitter, &[Transmitter], Receiver); 4] = [
                ("p11", profile.p11, Primary, &[Primary], PrimaryDest),
                ("p112", profile.p112, Primary, &both, PrimaryDest),
                ("p22", profile.p22, Secondary, &[Secondary], SecondaryDest),
                ("p212", profile.p212, Secondary, &both, SecondaryDest),
            ];
            for (i, (name, p, tx, active, rx)) in links.into_iter().enumerate() {
                match samples {
                    Some(n) => {
                        let est = scenario.mc_success_estimate(
                            tx,
                            active,
                            rx,
                            n,
                            seed.wrapping_add(i as u64),
                        )?;
                        println!(
                            "{name:<5} {p:.10}  mc {:.6} ± {:.1e}",
                            est.probability, est.std_error
                        );
                    }
                    None => println!("{name:<5} {p:.10}"),
                }
            }
            println!("profile {profile}");
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io { .. } => EXIT_IO,
                _ => EXIT_USAGE,
            })
        }
    }
}
