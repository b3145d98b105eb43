//! Parameter sweeps, CSV output and analytics-vs-simulation comparison.
//!
//! An [`ExperimentSpec`] fixes a link profile, the operating point `(λ, q, M)`,
//! an optional sweep over one of the three, optional simulation settings and
//! an optional CSV destination. Specs can be built in code, from CLI flags, or
//! loaded from TOML with [`load_spec`]:
//!
//! ```toml
//! preset = "fig3"            # or: profile = [0.8, 0.6, 0.9, 0.7]
//!                            # or: scenario = "scenario.toml"
//! lambda = 0.3
//! q = 0.9
//! M = 2
//! out = "sweep.csv"
//!
//! [sweep]
//! var = "q"                  # q | lambda | M
//! start = 0.0
//! stop = 1.0
//! step = 0.1                 # or: values = [1, 2, 4, 10]
//!
//! [simulation]
//! slots = 1000000
//! warmup = 10000             # default max(10^4, 100·M)
//! reps = 5
//! seed = 1
//! ```
//!
//! Relative `scenario` and `out` paths resolve against the spec file's directory.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::phy::{LinkSuccessProfile, PhyScenario};
use crate::queue::{service_rates, stationary_distribution, ProtocolParams};
use crate::simulator::{replicate, Estimate, SimConfig, SimStats};
use crate::throughput::aggregate_throughput;

/// λ used when a spec does not set one. Not taken from any figure.
pub const DEFAULT_LAMBDA: f64 = 0.3;
/// `q` used when a spec does not set one.
pub const DEFAULT_Q: f64 = 0.9;
/// `M` used when a spec does not set one. Not taken from any figure.
pub const DEFAULT_M: usize = 2;
pub const DEFAULT_SLOTS: u64 = 1_000_000;
pub const DEFAULT_REPLICATIONS: usize = 5;
pub const DEFAULT_SEED: u64 = 1;

/// A comparison passes when the analytical value lies within this many
/// standard errors of the simulated mean.
pub const COMPARE_SIGMAS: f64 = 4.0;

pub const CSV_HEADER: [&str; 13] = [
    "swept_var",
    "value",
    "mu1",
    "mu2",
    "stable",
    "pi0",
    "prob_band",
    "Ts",
    "Taggr",
    "Ts_sim",
    "Ts_ci",
    "Taggr_sim",
    "Taggr_ci",
];

/// The four link profiles of the reference numerical study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Good links, strong MPR.
    Fig3,
    /// Poor links, strong MPR.
    Fig4,
    /// Good links, weak MPR.
    Fig5,
    /// Poor links, weak MPR.
    Fig6,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6];

    pub fn profile(self) -> LinkSuccessProfile {
        let (p11, p112, p22, p212) = match self {
            Preset::Fig3 => (0.8, 0.6, 0.9, 0.7),
            Preset::Fig4 => (0.5, 0.3, 0.6, 0.35),
            Preset::Fig5 => (0.8, 0.3, 0.9, 0.4),
            Preset::Fig6 => (0.5, 0.15, 0.6, 0.2),
        };
        LinkSuccessProfile {
            p11,
            p112,
            p22,
            p212,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::param(
                    "preset",
                    format!("unknown preset `{s}` (expected fig3..fig6)"),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Q,
    Lambda,
    M,
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVar::Q => "q",
            SweepVar::Lambda => "lambda",
            SweepVar::M => "M",
        })
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" => Ok(SweepVar::Q),
            "lambda" => Ok(SweepVar::Lambda),
            "M" | "m" => Ok(SweepVar::M),
            other => Err(Error::param(
                "sweep.var",
                format!("unknown sweep variable `{other}` (expected q, lambda or M)"),
            )),
        }
    }
}

/// Values taken by the swept variable, in sweep order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub var: SweepVar,
    pub values: Vec<f64>,
}

impl Sweep {
    /// Inclusive grid `start, start+step, …, stop`. Grid values are rounded to
    /// 12 decimals so that e.g. `0.1·3` is exactly `0.3`.
    pub fn range(var: SweepVar, start: f64, stop: f64, step: f64) -> Result<Sweep> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::param("sweep.step", format!("{step} must be > 0")));
        }
        if !(stop >= start) {
            return Err(Error::param(
                "sweep.stop",
                format!("{stop} is below start = {start}"),
            ));
        }
        check_sweep_value(var, "sweep.start", start)?;
        check_sweep_value(var, "sweep.stop", stop)?;
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        let values = (0..=n)
            .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
            .collect();
        Sweep::list(var, values)
    }

    pub fn list(var: SweepVar, values: Vec<f64>) -> Result<Sweep> {
        if values.is_empty() {
            return Err(Error::param("sweep.values", "no sweep values"));
        }
        for v in &values {
            check_sweep_value(var, "sweep.values", *v)?;
        }
        Ok(Sweep { var, values })
    }
}

fn check_sweep_value(var: SweepVar, field: &str, value: f64) -> Result<()> {
    let ok = match var {
        SweepVar::Q => (0.0..=1.0).contains(&value),
        SweepVar::Lambda => (0.0..1.0).contains(&value),
        SweepVar::M => value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64,
    };
    if ok {
        Ok(())
    } else {
        let domain = match var {
            SweepVar::Q => "[0, 1]",
            SweepVar::Lambda => "[0, 1)",
            SweepVar::M => "integers >= 1",
        };
        Err(Error::param(
            field,
            format!("{var} = {value} is outside {domain}"),
        ))
    }
}

/// Parses `var:start:stop:step`.
impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [var, start, stop, step] = parts[..] else {
            return Err(Error::param(
                "sweep",
                format!("`{s}` is not of the form var:start:stop:step"),
            ));
        };
        let num = |field: &str, v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::param(field, format!("`{v}`: {e}")))
        };
        Sweep::range(
            var.parse()?,
            num("sweep.start", start)?,
            num("sweep.stop", stop)?,
            num("sweep.step", step)?,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSettings {
    pub slots: u64,
    /// `None` selects `max(10^4, 100·M)`.
    pub warmup: Option<u64>,
    pub replications: usize,
    /// Sweep point `k` uses `seed + k`; replications within a point use
    /// separate streams of that seed.
    pub seed: u64,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            slots: DEFAULT_SLOTS,
            warmup: None,
            replications: DEFAULT_REPLICATIONS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub profile: LinkSuccessProfile,
    pub lambda: f64,
    pub q: f64,
    pub m: usize,
    /// `None` evaluates the single point `(λ, q, M)`.
    pub sweep: Option<Sweep>,
    pub simulation: Option<SimSettings>,
    pub out: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(profile: LinkSuccessProfile) -> Self {
        ExperimentSpec {
            profile,
            lambda: DEFAULT_LAMBDA,
            q: DEFAULT_Q,
            m: DEFAULT_M,
            sweep: None,
            simulation: None,
            out: None,
        }
    }

    pub fn preset(preset: Preset) -> Self {
        Self::new(preset.profile())
    }

    pub fn validate(&self) -> Result<()> {
        self.profile.validate()?;
        ProtocolParams::new(self.lambda, self.q, self.m)?;
        if let Some(sweep) = &self.sweep {
            Sweep::list(sweep.var, sweep.values.clone())?;
        }
        if let Some(sim) = &self.simulation {
            if sim.slots == 0 {
                return Err(Error::param("simulation.slots", "must be at least 1"));
            }
            if sim.replications == 0 {
                return Err(Error::param("simulation.reps", "must be at least 1"));
            }
            if let Some(w) = sim.warmup {
                if w >= sim.slots {
                    return Err(Error::param(
                        "simulation.warmup",
                        format!("{w} must be below slots = {}", sim.slots),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn swept_var(&self) -> SweepVar {
        self.sweep.as_ref().map_or(SweepVar::Q, |s| s.var)
    }

    /// `(swept value, parameters)` for every sweep point, in sweep order.
    pub fn points(&self) -> Result<Vec<(f64, ProtocolParams)>> {
        let sweep = match &self.sweep {
            Some(s) => s.clone(),
            None => Sweep::list(SweepVar::Q, vec![self.q])?,
        };
        sweep
            .values
            .iter()
            .map(|&v| {
                let params = match sweep.var {
                    SweepVar::Q => ProtocolParams::new(self.lambda, v, self.m),
                    SweepVar::Lambda => ProtocolParams::new(v, self.q, self.m),
                    SweepVar::M => ProtocolParams::new(self.lambda, self.q, v as usize),
                }?;
                Ok((v, params))
            })
            .collect()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    preset: Option<String>,
    profile: Option<Vec<f64>>,
    scenario: Option<PathBuf>,
    lambda: Option<f64>,
    q: Option<f64>,
    #[serde(rename = "M")]
    m: Option<i64>,
    out: Option<PathBuf>,
    sweep: Option<SweepFile>,
    simulation: Option<SimFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    var: String,
    start: Option<f64>,
    stop: Option<f64>,
    step: Option<f64>,
    values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimFile {
    slots: Option<u64>,
    warmup: Option<u64>,
    reps: Option<usize>,
    seed: Option<u64>,
}

/// Loads and validates an experiment spec from TOML.
pub fn load_spec(path: impl AsRef<Path>) -> Result<ExperimentSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new(""));
    parse_spec(&text, base).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })
}

/// Parses a spec from TOML text; relative paths resolve against `base`.
pub fn parse_spec(text: &str, base: &Path) -> Result<ExperimentSpec> {
    let file: SpecFile = toml::from_str(text).map_err(|e| Error::Parse {
        path: "<spec>".into(),
        message: e.to_string(),
    })?;

    let profile = match (file.preset, file.profile, file.scenario) {
        (Some(name), None, None) => name.parse::<Preset>()?.profile(),
        (None, Some(values), None) => match values[..] {
            [p11, p112, p22, p212] => LinkSuccessProfile::new(p11, p112, p22, p212)?,
            _ => {
                return Err(Error::param(
                    "profile",
                    format!(
                        "expected 4 values [p11, p112, p22, p212], got {}",
                        values.len()
                    ),
                ))
            }
        },
        (None, None, Some(scenario)) => {
            PhyScenario::load(base.join(scenario))?.derive_link_profile()?
        }
        (None, None, None) => {
            return Err(Error::param(
                "preset",
                "no link profile: set one of preset, profile or scenario",
            ))
        }
        _ => {
            return Err(Error::param(
                "preset",
                "preset, profile and scenario are mutually exclusive",
            ))
        }
    };

    let mut spec = ExperimentSpec::new(profile);
    if let Some(l) = file.lambda {
        spec.lambda = l;
    }
    if let Some(q) = file.q {
        spec.q = q;
    }
    if let Some(m) = file.m {
        if m < 1 {
            return Err(Error::param("M", format!("{m} must be at least 1")));
        }
        spec.m = m as usize;
    }
    spec.out = file.out.map(|o| base.join(o));

    if let Some(s) = file.sweep {
        let var: SweepVar = s.var.parse()?;
        spec.sweep = Some(match (s.values, s.start, s.stop, s.step) {
            (Some(values), None, None, None) => Sweep::list(var, values)?,
            (None, Some(start), Some(stop), Some(step)) => Sweep::range(var, start, stop, step)?,
            _ => {
                return Err(Error::param(
                    "sweep",
                    "give either start/stop/step or values",
                ))
            }
        });
    }

    if let Some(sim) = file.simulation {
        let d = SimSettings::default();
        spec.simulation = Some(SimSettings {
            slots: sim.slots.unwrap_or(d.slots),
            warmup: sim.warmup,
            replications: sim.reps.unwrap_or(d.replications),
            seed: sim.seed.unwrap_or(d.seed),
        });
    }

    spec.validate()?;
    Ok(spec)
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept_var: SweepVar,
    pub value: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub stable: bool,
    /// Analytical columns; `None` iff unstable.
    pub pi0: Option<f64>,
    pub prob_band: Option<f64>,
    pub ts: Option<f64>,
    pub taggr: Option<f64>,
    /// Simulated means and 95% half-widths; `None` when not simulated.
    pub ts_sim: Option<f64>,
    pub ts_ci: Option<f64>,
    pub taggr_sim: Option<f64>,
    pub taggr_ci: Option<f64>,
}

/// Formats with 10 significant digits in plain decimal notation.
pub fn format_sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.9e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let rounded: f64 = sci.parse().expect("valid float");
    let decimals = (9 - exp).max(0) as usize;
    format!("{rounded:.decimals$}")
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig10).unwrap_or_default()
}

impl SweepRow {
    pub fn csv_fields(&self) -> [String; 13] {
        let value = match self.swept_var {
            SweepVar::M => format!("{}", self.value as u64),
            _ => format_sig10(self.value),
        };
        [
            self.swept_var.to_string(),
            value,
            format_sig10(self.mu1),
            format_sig10(self.mu2),
            self.stable.to_string(),
            opt(self.pi0),
            opt(self.prob_band),
            opt(self.ts),
            opt(self.taggr),
            opt(self.ts_sim),
            opt(self.ts_ci),
            opt(self.taggr_sim),
            opt(self.taggr_ci),
        ]
    }

    fn from_record(record: &csv::StringRecord, line: u64) -> std::result::Result<SweepRow, String> {
        if record.len() != CSV_HEADER.len() {
            return Err(format!(
                "line {line}: expected {} fields, got {}",
                CSV_HEADER.len(),
                record.len()
            ));
        }
        let num = |i: usize| -> std::result::Result<f64, String> {
            record[i]
                .parse::<f64>()
                .map_err(|e| format!("line {line}, column {}: {e}", CSV_HEADER[i]))
        };
        let opt_num = |i: usize| -> std::result::Result<Option<f64>, String> {
            if record[i].is_empty() {
                Ok(None)
            } else {
                num(i).map(Some)
            }
        };
        Ok(SweepRow {
            swept_var: record[0]
                .parse()
                .map_err(|e: Error| format!("line {line}: {e}"))?,
            value: num(1)?,
            mu1: num(2)?,
            mu2: num(3)?,
            stable: record[4]
                .parse()
                .map_err(|e| format!("line {line}, column stable: {e}"))?,
            pi0: opt_num(5)?,
            prob_band: opt_num(6)?,
            ts: opt_num(7)?,
            taggr: opt_num(8)?,
            ts_sim: opt_num(9)?,
            ts_ci: opt_num(10)?,
            taggr_sim: opt_num(11)?,
            taggr_ci: opt_num(12)?,
        })
    }
}

/// Full result for one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub row: SweepRow,
    pub params: ProtocolParams,
    pub sim: Option<SimStats>,
}

/// Evaluates every sweep point (in parallel) without writing output.
pub fn evaluate(spec: &ExperimentSpec) -> Result<Vec<SweepPoint>> {
    spec.validate()?;
    let var = spec.swept_var();
    let points = spec.points()?;
    points
        .into_par_iter()
        .enumerate()
        .map(|(index, (value, params))| evaluate_point(spec, var, index, value, params))
        .collect()
}

fn evaluate_point(
    spec: &ExperimentSpec,
    var: SweepVar,
    index: usize,
    value: f64,
    params: ProtocolParams,
) -> Result<SweepPoint> {
    let profile = &spec.profile;
    let rates = service_rates(profile, params.q)?;
    let report = aggregate_throughput(&params, &rates, profile)?;
    let dist = if report.stable {
        Some(stationary_distribution(&params, &rates)?)
    } else {
        None
    };
    let sim = match &spec.simulation {
        Some(settings) => {
            let mut config = SimConfig::new(
                params,
                *profile,
                settings.slots,
                settings.seed.wrapping_add(index as u64),
            )
            .with_replications(settings.replications);
            if let Some(w) = settings.warmup {
                config.warmup = w;
            }
            Some(replicate(&config)?)
        }
        None => None,
    };
    let row = SweepRow {
        swept_var: var,
        value,
        mu1: rates.mu1,
        mu2: rates.mu2,
        stable: report.stable,
        pi0: dist.as_ref().map(|d| d.pi0),
        prob_band: dist.as_ref().map(|d| d.prob_band),
        ts: report.t_secondary,
        taggr: report.t_aggregate,
        ts_sim: sim.as_ref().map(|s| s.t_secondary.mean),
        ts_ci: sim.as_ref().and_then(|s| s.t_secondary.ci_half_width),
        taggr_sim: sim.as_ref().map(|s| s.t_aggregate.mean),
        taggr_ci: sim.as_ref().and_then(|s| s.t_aggregate.ci_half_width),
    };
    Ok(SweepPoint { row, params, sim })
}

/// Evaluates the sweep and, when `spec.out` is set, writes the CSV atomically.
pub fn run_sweep(spec: &ExperimentSpec) -> Result<Vec<SweepRow>> {
    let rows: Vec<SweepRow> = evaluate(spec)?.into_iter().map(|p| p.row).collect();
    if let Some(out) = &spec.out {
        write_csv(out, &rows)?;
    }
    Ok(rows)
}

/// Writes rows as CSV to any writer.
pub fn write_csv_to<W: Write>(writer: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Writes rows to `path` through a temporary file in the same directory
/// followed by a rename.
pub fn write_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    write_csv_to(&mut tmp, rows).map_err(|e| Error::io(path, e.into()))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    })?;
    let parse_err = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    let header = reader.headers().map_err(|e| parse_err(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(parse_err(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec.map_err(|e| parse_err(e.to_string()))?;
            SweepRow::from_record(&rec, i as u64 + 2).map_err(parse_err)
        })
        .collect()
}

/// One analytical-vs-simulated check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub quantity: &'static str,
    pub analytic: f64,
    pub simulated: Estimate,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparePoint {
    pub value: f64,
    pub params: ProtocolParams,
    pub stable: bool,
    /// Empty for unstable points.
    pub checks: Vec<Check>,
}

impl ComparePoint {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub swept_var: SweepVar,
    pub points: Vec<ComparePoint>,
    pub rows: Vec<SweepRow>,
}

impl CompareReport {
    /// True iff every stable point passes.
    pub fn passed(&self) -> bool {
        self.points.iter().all(ComparePoint::passed)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>8} {:<10} {:>12} {:>12} {:>10} {:>10}  result",
            self.swept_var, "quantity", "analytic", "sim_mean", "std_err", "ci95"
        )?;
        for p in &self.points {
            if !p.stable {
                writeln!(
                    f,
                    "{:>8} {:<10} unstable (lambda >= mu2), not compared",
                    p.value, "-"
                )?;
                continue;
            }
            for c in &p.checks {
                writeln!(
                    f,
                    "{:>8} {:<10} {:>12.8} {:>12.8} {:>10.2e} {:>10} {}",
                    p.value,
                    c.quantity,
                    c.analytic,
                    c.simulated.mean,
                    c.simulated.std_error.unwrap_or(f64::NAN),
                    c.simulated
                        .ci_half_width
                        .map_or_else(|| "-".to_string(), |h| format!("{h:.2e}")),
                    if c.pass { "PASS" } else { "FAIL" }
                )?;
            }
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs the sweep with simulation and checks `π(0)`, `Pr(1≤Q≤M)`, `T_s` and
/// `T_aggr` at every stable point against the simulated mean ±
/// [`COMPARE_SIGMAS`] standard errors. Writes the CSV when `spec.out` is set.
pub fn compare(spec: &ExperimentSpec) -> Result<CompareReport> {
    if spec.simulation.is_none() {
        return Err(Error::param(
            "simulation",
            "compare needs simulation settings",
        ));
    }
    let evaluated = evaluate(spec)?;
    let points = evaluated
        .iter()
        .map(|p| {
            let sim = p.sim.as_ref().expect("simulation requested");
            let row = &p.row;
            let checks = if row.stable {
                [
                    ("pi0", row.pi0, sim.frac_empty),
                    ("prob_band", row.prob_band, sim.frac_band),
                    ("Ts", row.ts, sim.t_secondary),
                    ("Taggr", row.taggr, sim.t_aggregate),
                ]
                .into_iter()
                .map(|(quantity, analytic, simulated)| {
                    let analytic = analytic.expect("stable rows carry analytics");
                    Check {
                        quantity,
                        analytic,
                        simulated,
                        pass: simulated.covers(analytic, COMPARE_SIGMAS),
                    }
                })
                .collect()
            } else {
                Vec::new()
            };
            ComparePoint {
                value: row.value,
                params: p.params,
                stable: row.stable,
                checks,
            }
        })
        .collect();
    let rows: Vec<SweepRow> = evaluated.into_iter().map(|p| p.row).collect();
    if let Some(out) = &spec.out {
        write_csv(out, &rows)?;
    }
    Ok(CompareReport {
        swept_var: spec.swept_var(),
        points,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn presets_match_reference_profiles() {
        let p = "fig3".parse::<Preset>().unwrap().profile();
        assert_eq!((p.p11, p.p112, p.p22, p.p212), (0.8, 0.6, 0.9, 0.7));
        let p = "FIG6".parse::<Preset>().unwrap().profile();
        assert_eq!((p.p11, p.p112, p.p22, p.p212), (0.5, 0.15, 0.6, 0.2));
        for preset in Preset::ALL {
            preset.profile().validate().unwrap();
        }
        assert!("fig7".parse::<Preset>().is_err());
    }

    #[test]
    fn sweep_grid_is_inclusive_and_clean() {
        let s: Sweep = "q:0:1:0.1".parse().unwrap();
        assert_eq!(s.values.len(), 11);
        assert_eq!(s.values[3], 0.3);
        assert_eq!(*s.values.last().unwrap(), 1.0);
        let s: Sweep = "M:1:10:3".parse().unwrap();
        assert_eq!(s.values, vec![1.0, 4.0, 7.0, 10.0]);
    }

    #[test]
    fn sweep_domain_errors() {
        let err = Sweep::range(SweepVar::Q, 0.0, 1.5, 0.1).unwrap_err();
        assert!(
            matches!(&err, Error::Parameter { name, .. } if name == "sweep.stop"),
            "{err}"
        );
        assert!("lambda:0:1:0.1".parse::<Sweep>().is_err());
        assert!("q:0:1:0".parse::<Sweep>().is_err());
        assert!("q:0.5:0.2:0.1".parse::<Sweep>().is_err());
        assert!("M:0:4:1".parse::<Sweep>().is_err());
        assert!("M:1:4:0.5".parse::<Sweep>().is_err());
        assert!("x:0:1:0.1".parse::<Sweep>().is_err());
        assert!("q:0:1".parse::<Sweep>().is_err());
    }

    #[test]
    fn sig10_formatting() {
        assert_eq!(format_sig10(0.5224077640606003), "0.5224077641");
        assert_eq!(format_sig10(0.62), "0.6200000000");
        assert_eq!(format_sig10(1.0574252482848598), "1.057425248");
        assert_eq!(format_sig10(0.99999999996), "1.000000000");
        assert_eq!(format_sig10(2.5e-7), "0.0000002500000000");
        assert_eq!(format_sig10(0.0), "0");
    }

    #[test]
    fn spec_parsing() {
        let text = r#"
            preset = "fig5"
            lambda = 0.25
            M = 4
            out = "rows.csv"
            [sweep]
            var = "q"
            start = 0.0
            stop = 1.0
            step = 0.25
            [simulation]
            slots = 5000
            reps = 2
        "#;
        let spec = parse_spec(text, Path::new("/tmp/x")).unwrap();
        assert_eq!(spec.profile, Preset::Fig5.profile());
        assert_eq!((spec.lambda, spec.q, spec.m), (0.25, DEFAULT_Q, 4));
        assert_eq!(spec.sweep.as_ref().unwrap().values.len(), 5);
        assert_eq!(spec.out.as_deref(), Some(Path::new("/tmp/x/rows.csv")));
        let sim = spec.simulation.unwrap();
        assert_eq!(
            (sim.slots, sim.replications, sim.seed),
            (5000, 2, DEFAULT_SEED)
        );
    }

    #[test]
    fn spec_errors_name_the_problem() {
        let err = parse_spec("preset = \"fig3\"\nq = 1.5\n", Path::new("")).unwrap_err();
        assert!(
            matches!(&err, Error::Parameter { name, .. } if name == "q"),
            "{err}"
        );

        let err = parse_spec(
            "preset = \"fig3\"\n[sweep]\nvar = \"q\"\nstart = 0\nstop = 1.5\nstep = 0.1\n",
            Path::new(""),
        )
        .unwrap_err();
        assert!(err.to_string().contains("sweep.stop"), "{err}");

        let err = parse_spec("preset = \"fig3\"\nlambda = \n", Path::new("")).unwrap_err();
        let Error::Parse { message, .. } = &err else {
            panic!("{err}")
        };
        assert!(message.contains("line 2"), "{message}");

        let err = parse_spec("profile = [0.8, 0.9, 0.9, 0.7]\n", Path::new("")).unwrap_err();
        assert!(err.to_string().contains("p112"), "{err}");

        assert!(parse_spec("lambda = 0.3\n", Path::new("")).is_err());
        assert!(parse_spec(
            "preset = \"fig3\"\nprofile = [0.8,0.6,0.9,0.7]\n",
            Path::new("")
        )
        .is_err());
        assert!(parse_spec("preset = \"fig3\"\nbogus = 1\n", Path::new("")).is_err());
    }

    #[test]
    fn unstable_rows_carry_no_analytics() {
        let mut spec = ExperimentSpec::preset(Preset::Fig3);
        spec.sweep = Some("lambda:0:0.95:0.05".parse().unwrap());
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 20);
        for row in &rows {
            assert_eq!(row.stable, row.value < 0.8, "λ = {}", row.value);
            assert_eq!(row.pi0.is_some(), row.stable);
            assert_eq!(row.ts.is_some(), row.stable);
            assert_eq!(row.taggr.is_some(), row.stable);
            assert!(row.ts_sim.is_none());
            let fields = row.csv_fields();
            if !row.stable {
                assert!(fields[5..9].iter().all(String::is_empty));
            }
        }
    }

    #[test]
    fn compare_requires_simulation() {
        assert!(compare(&ExperimentSpec::preset(Preset::Fig3)).is_err());
    }

    #[test]
    fn csv_rejects_wrong_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::Parse { .. })));
        assert!(matches!(
            read_csv(&dir.path().join("missing.csv")),
            Err(Error::Io { .. })
        ));
    }

    fn arb_row() -> impl Strategy<Value = SweepRow> {
        let p = 0.0f64..1.0;
        (
            prop_oneof![Just(SweepVar::Q), Just(SweepVar::Lambda), Just(SweepVar::M)],
            p.clone(),
            p.clone(),
            any::<bool>(),
            prop::array::uniform4(p.clone()),
            prop::option::of(prop::array::uniform4(1e-9f64..2.0)),
            1u32..1000,
        )
            .prop_map(|(var, mu1, mu2, stable, a, sim, m)| SweepRow {
                swept_var: var,
                value: if var == SweepVar::M { m as f64 } else { mu1 },
                mu1,
                mu2,
                stable,
                pi0: stable.then_some(a[0]),
                prob_band: stable.then_some(a[1]),
                ts: stable.then_some(a[2]),
                taggr: stable.then_some(a[3] + 0.5),
                ts_sim: sim.map(|s| s[0]),
                ts_ci: sim.map(|s| s[1] * 1e-3),
                taggr_sim: sim.map(|s| s[2]),
                taggr_ci: sim.map(|s| s[3] * 1e-3),
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn csv_round_trip(rows in prop::collection::vec(arb_row(), 0..12)) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("rows.csv");
            write_csv(&path, &rows).unwrap();
            let back = read_csv(&path).unwrap();
            prop_assert_eq!(back.len(), rows.len());
            for (a, b) in rows.iter().zip(&back) {
                prop_assert_eq!(a.csv_fields(), b.csv_fields());
                prop_assert_eq!(b.ts, a.ts.map(|x| format_sig10(x).parse::<f64>().unwrap()));
            }
        }
    }
}
