//! Secondary and aggregate throughput.
//!
//! The secondary is decoded either in an idle slot of the primary
//! (`Pr(Q=0)·p_{2/2}`) or while contending inside the band
//! (`Pr(1≤Q≤M)·q·p_{2/1,2}`). Above `M` it is silent.

use std::fmt;

use crate::error::{Error, Result};
use crate::phy::LinkSuccessProfile;
use crate::queue::{
    closed_form_parts, is_stable, stationary_distribution, ProtocolParams, ServiceRates,
};

/// The two contributions to the secondary throughput.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputTerms {
    /// `Pr(Q=0)·p_{2/2}`.
    pub idle: f64,
    /// `Pr(1≤Q≤M)·q·p_{2/1,2}`.
    pub band: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputReport {
    pub params: ProtocolParams,
    pub rates: ServiceRates,
    pub stable: bool,
    /// Packets/slot; `None` when the primary queue is unstable.
    pub t_secondary: Option<f64>,
    /// Equals λ when stable.
    pub t_primary: Option<f64>,
    pub t_aggregate: Option<f64>,
    pub terms: Option<ThroughputTerms>,
}

fn terms(
    params: &ProtocolParams,
    rates: &ServiceRates,
    profile: &LinkSuccessProfile,
) -> Result<ThroughputTerms> {
    profile.validate()?;
    let dist = stationary_distribution(params, rates)?;
    Ok(ThroughputTerms {
        idle: dist.pi0 * profile.p22,
        band: dist.prob_band * params.q * profile.p212,
    })
}

/// Secondary throughput assembled from the stationary distribution.
pub fn secondary_throughput(
    params: &ProtocolParams,
    rates: &ServiceRates,
    profile: &LinkSuccessProfile,
) -> Result<f64> {
    let t = terms(params, rates, profile)?;
    Ok(t.idle + t.band)
}

/// Single-expression closed form
/// `T_s = (μ2−λ)[(μ1−λ)p_{2/2} + λ(1−a^M) q p_{2/1,2}] / (μ1μ2 − λμ1 − λa^M(μ2−μ1))`.
///
/// `None` near `a = 1` where it is 0/0; errors as [`secondary_throughput`].
pub fn secondary_throughput_closed_form(
    params: &ProtocolParams,
    rates: &ServiceRates,
    profile: &LinkSuccessProfile,
) -> Result<Option<f64>> {
    profile.validate()?;
    // Validates the chain inputs and stability.
    stationary_distribution(params, rates)?;
    let l = params.lambda;
    Ok(closed_form_parts(params, rates).map(|(denom, a_m)| {
        (rates.mu2 - l)
            * ((rates.mu1 - l) * profile.p22 + l * (1.0 - a_m) * params.q * profile.p212)
            / denom
    }))
}

/// Primary, secondary and aggregate throughput. An unstable queue yields a
/// report with `stable = false` and no analytical throughputs.
pub fn aggregate_throughput(
    params: &ProtocolParams,
    rates: &ServiceRates,
    profile: &LinkSuccessProfile,
) -> Result<ThroughputReport> {
    params.validate()?;
    profile.validate()?;
    let mut report = ThroughputReport {
        params: *params,
        rates: *rates,
        stable: is_stable(params, rates),
        t_secondary: None,
        t_primary: None,
        t_aggregate: None,
        terms: None,
    };
    if report.stable {
        let t = terms(params, rates, profile)?;
        let t_s = t.idle + t.band;
        report.terms = Some(t);
        report.t_secondary = Some(t_s);
        report.t_primary = Some(params.lambda);
        report.t_aggregate = Some(params.lambda + t_s);
    }
    Ok(report)
}

impl ThroughputReport {
    /// The aggregate throughput, or a stability error.
    pub fn require_stable(&self) -> Result<f64> {
        self.t_aggregate.ok_or(Error::Unstable {
            lambda: self.params.lambda,
            mu2: self.rates.mu2,
        })
    }
}

impl fmt::Display for ThroughputReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "lambda        {}", p.lambda)?;
        writeln!(f, "q             {}", p.q)?;
        writeln!(f, "M             {}", p.m)?;
        writeln!(f, "mu1           {:.10}", self.rates.mu1)?;
        writeln!(f, "mu2           {:.10}", self.rates.mu2)?;
        writeln!(f, "stable        {}", self.stable)?;
        if let (Some(ts), Some(tp), Some(ta), Some(t)) = (
            self.t_secondary,
            self.t_primary,
            self.t_aggregate,
            self.terms,
        ) {
            writeln!(f, "T_primary     {tp:.10}")?;
            writeln!(f, "T_secondary   {ts:.10}")?;
            writeln!(f, "  idle term   {:.10}", t.idle)?;
            writeln!(f, "  band term   {:.10}", t.band)?;
            write!(f, "T_aggregate   {ta:.10}")?;
        } else {
            write!(f, "throughput    undefined (lambda >= mu2)")?;
        }
        Ok(())
    }
}
