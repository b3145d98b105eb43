//! Primary-queue Markov chain.
//!
//! The queue length is a discrete-time birth–death chain. From state 0 it
//! moves up with probability λ. In states `1..=M` the secondary may transmit
//! alongside the primary, so the primary's service probability is μ1; above
//! `M` the secondary is silent and it is μ2. In a busy state `i` the chain
//! moves up with `λ(1−μ)` and down with `(1−λ)μ`.
//!
//! [`stationary_distribution`] solves the chain by detailed balance and sums
//! the geometric tail exactly. The closed forms for `Pr(Q=0)` and
//! `Pr(1≤Q≤M)` are kept separately ([`closed_form_prob_empty`],
//! [`closed_form_prob_band`]) because they are singular at `a = 1`.
//! [`truncated_solve_oracle`] is an independent dense linear solve of the
//! truncated chain.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_probability, Error, Result};
use crate::phy::LinkSuccessProfile;

/// `|a − 1|` at or below which the closed forms are treated as singular.
pub const SINGULARITY_TOLERANCE: f64 = 1e-6;

/// Residual target for the oracle's global-balance solve.
pub const ORACLE_RESIDUAL: f64 = 1e-12;

/// Largest truncated chain the oracle will factor densely.
pub const ORACLE_MAX_STATES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolParams {
    /// Bernoulli arrival probability per slot, in `[0, 1)`.
    pub lambda: f64,
    /// Secondary access probability while `1 ≤ Q ≤ M`.
    pub q: f64,
    /// Congestion limit `M ≥ 1`.
    pub m: usize,
}

impl ProtocolParams {
    pub fn new(lambda: f64, q: f64, m: usize) -> Result<Self> {
        let params = ProtocolParams { lambda, q, m };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.lambda) {
            return Err(Error::param(
                "lambda",
                format!("{} is not in [0, 1)", self.lambda),
            ));
        }
        check_probability("q", self.q)?;
        if self.m == 0 {
            return Err(Error::param("M", "congestion limit must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServiceRates {
    /// Primary success probability while the secondary may contend (`1 ≤ Q ≤ M`).
    pub mu1: f64,
    /// Primary success probability while the secondary is silent (`Q > M`).
    pub mu2: f64,
}

/// `μ1 = q·p_{1/1,2} + (1−q)·p_{1/1}` and `μ2 = p_{1/1}`.
pub fn service_rates(profile: &LinkSuccessProfile, q: f64) -> Result<ServiceRates> {
    profile.validate()?;
    check_probability("q", q)?;
    if profile.p11 == 0.0 {
        return Err(Error::Degenerate(
            "p11 = 0: the primary can never deliver a packet".into(),
        ));
    }
    let mu1 = q * profile.p112 + (1.0 - q) * profile.p11;
    if mu1 <= 0.0 {
        return Err(Error::Degenerate(format!(
            "μ1 = 0 (q = {q}, p112 = {}): states 1..=M cannot drain",
            profile.p112
        )));
    }
    Ok(ServiceRates {
        mu1,
        mu2: profile.p11,
    })
}

/// Stability requires `λ < μ2` strictly.
pub fn is_stable(params: &ProtocolParams, rates: &ServiceRates) -> bool {
    params.lambda < rates.mu2
}

fn service_in(params: &ProtocolParams, rates: &ServiceRates, state: usize) -> f64 {
    match state {
        0 => 0.0,
        s if s <= params.m => rates.mu1,
        _ => rates.mu2,
    }
}

/// Probability of moving from `state` to `state + 1` in one slot.
pub fn birth_probability(params: &ProtocolParams, rates: &ServiceRates, state: usize) -> f64 {
    params.lambda * (1.0 - service_in(params, rates, state))
}

/// Probability of moving from `state` to `state − 1` in one slot (0 for state 0).
pub fn death_probability(params: &ProtocolParams, rates: &ServiceRates, state: usize) -> f64 {
    (1.0 - params.lambda) * service_in(params, rates, state)
}

/// Geometric ratios `(a, b)`: `a = λ(1−μ1)/((1−λ)μ1)` within the band and
/// `b = λ(1−μ2)/((1−λ)μ2)` in the tail.
pub fn geometric_ratios(params: &ProtocolParams, rates: &ServiceRates) -> (f64, f64) {
    let l = params.lambda;
    (
        l * (1.0 - rates.mu1) / ((1.0 - l) * rates.mu1),
        l * (1.0 - rates.mu2) / ((1.0 - l) * rates.mu2),
    )
}

fn check_inputs(params: &ProtocolParams, rates: &ServiceRates) -> Result<()> {
    params.validate()?;
    if !(rates.mu1 > 0.0 && rates.mu1 <= 1.0) {
        return Err(Error::param(
            "mu1",
            format!("{} is not in (0, 1]", rates.mu1),
        ));
    }
    if !(rates.mu2 > 0.0 && rates.mu2 <= 1.0) {
        return Err(Error::param(
            "mu2",
            format!("{} is not in (0, 1]", rates.mu2),
        ));
    }
    if !is_stable(params, rates) {
        return Err(Error::Unstable {
            lambda: params.lambda,
            mu2: rates.mu2,
        });
    }
    Ok(())
}

/// States beyond the congestion limit.
#[derive(Debug, Clone, PartialEq)]
pub enum Tail {
    /// `π(M+k) = first · ratio^(k−1)` for `k ≥ 1`.
    Geometric { first: f64, ratio: f64 },
    /// `π(M+1), π(M+2), …` up to a truncation level; zero beyond.
    Explicit(Vec<f64>),
}

/// Stationary distribution of the primary queue length.
#[derive(Debug, Clone, PartialEq)]
pub struct QueueDistribution {
    pub params: ProtocolParams,
    pub rates: ServiceRates,
    /// `π(0) = Pr(Q = 0)`.
    pub pi0: f64,
    /// `π(1), …, π(M)`.
    pub band: Vec<f64>,
    pub tail: Tail,
    /// `b`, the tail decay ratio of the untruncated chain.
    pub tail_ratio: f64,
    /// `Pr(1 ≤ Q ≤ M)`.
    pub prob_band: f64,
    /// `Pr(Q > M)`.
    pub prob_above: f64,
}

impl QueueDistribution {
    /// `π(state)` for any state.
    pub fn prob(&self, state: usize) -> f64 {
        let m = self.params.m;
        if state == 0 {
            self.pi0
        } else if state <= m {
            self.band[state - 1]
        } else {
            let k = state - m - 1;
            match &self.tail {
                Tail::Geometric { first, ratio } => {
                    if k == 0 {
                        *first
                    } else {
                        first * ratio.powf(k as f64)
                    }
                }
                Tail::Explicit(values) => values.get(k).copied().unwrap_or(0.0),
            }
        }
    }

    /// `pi0 + prob_band + prob_above`.
    pub fn total(&self) -> f64 {
        self.pi0 + self.prob_band + self.prob_above
    }
}

/// Stationary distribution by detailed balance, normalised with the exact
/// geometric tail sum. Singularity-free in `a`.
pub fn stationary_distribution(
    params: &ProtocolParams,
    rates: &ServiceRates,
) -> Result<QueueDistribution> {
    check_inputs(params, rates)?;
    let m = params.m;
    let (_, b) = geometric_ratios(params, rates);

    // Unnormalised weights for states 0..=M+1; rescaled whenever they grow
    // large so that a > 1 with large M cannot overflow.
    let mut w = Vec::with_capacity(m + 2);
    w.push(1.0f64);
    for i in 0..=m {
        let next =
            w[i] * birth_probability(params, rates, i) / death_probability(params, rates, i + 1);
        w.push(next);
        if next > 1e200 {
            w.iter_mut().for_each(|x| *x *= 1e-200);
        }
    }
    let first_tail = w[m + 1];
    let tail_mass = first_tail / (1.0 - b);
    let band_mass: f64 = w[1..=m].iter().sum();
    let z = w[0] + band_mass + tail_mass;

    let band: Vec<f64> = w[1..=m].iter().map(|x| x / z).collect();
    Ok(QueueDistribution {
        params: *params,
        rates: *rates,
        pi0: w[0] / z,
        prob_band: band.iter().sum(),
        band,
        tail: Tail::Geometric {
            first: first_tail / z,
            ratio: b,
        },
        tail_ratio: b,
        prob_above: tail_mass / z,
    })
}

/// Shared denominator of the closed forms together with `a^M`, or `None`
/// where the closed forms are singular or overflow.
pub(crate) fn closed_form_parts(
    params: &ProtocolParams,
    rates: &ServiceRates,
) -> Option<(f64, f64)> {
    let (a, _) = geometric_ratios(params, rates);
    if (a - 1.0).abs() <= SINGULARITY_TOLERANCE {
        return None;
    }
    let a_m = a.powf(params.m as f64);
    let (l, mu1, mu2) = (params.lambda, rates.mu1, rates.mu2);
    let denom = mu1 * mu2 - l * mu1 - l * a_m * (mu2 - mu1);
    (a_m.is_finite() && denom.is_finite() && denom != 0.0).then_some((denom, a_m))
}

/// Closed form
/// `π(0) = (μ1−λ)(μ2−λ) / (μ1μ2 − λμ1 − λ a^M (μ2−μ1))`, or `None` when
/// `|a − 1| ≤ SINGULARITY_TOLERANCE` (where it is 0/0) or on overflow.
pub fn closed_form_prob_empty(params: &ProtocolParams, rates: &ServiceRates) -> Option<f64> {
    let (denom, _) = closed_form_parts(params, rates)?;
    let l = params.lambda;
    Some((rates.mu1 - l) * (rates.mu2 - l) / denom)
}

/// Closed form `Pr(1≤Q≤M) = λ(1 − a^M)(μ2−λ) / (μ1μ2 − λμ1 − λ a^M (μ2−μ1))`.
pub fn closed_form_prob_band(params: &ProtocolParams, rates: &ServiceRates) -> Option<f64> {
    let (denom, a_m) = closed_form_parts(params, rates)?;
    let l = params.lambda;
    Some(l * (1.0 - a_m) * (rates.mu2 - l) / denom)
}

/// `Pr(Q = 0)`: the closed form where it is regular, the summation form otherwise.
pub fn prob_empty(params: &ProtocolParams, rates: &ServiceRates) -> Result<f64> {
    check_inputs(params, rates)?;
    match closed_form_prob_empty(params, rates) {
        Some(p) => Ok(p),
        None => Ok(stationary_distribution(params, rates)?.pi0),
    }
}

/// `Pr(1 ≤ Q ≤ M)`: the closed form where it is regular, the summation form otherwise.
pub fn prob_band(params: &ProtocolParams, rates: &ServiceRates) -> Result<f64> {
    check_inputs(params, rates)?;
    match closed_form_prob_band(params, rates) {
        Some(p) => Ok(p),
        None => Ok(stationary_distribution(params, rates)?.prob_band),
    }
}

/// Truncation level `N = M + max(50, ⌈ln(1e−14·(1−b)) / ln b⌉)`, which bounds
/// the discarded tail mass analytically.
pub fn oracle_truncation(params: &ProtocolParams, rates: &ServiceRates) -> usize {
    let (_, b) = geometric_ratios(params, rates);
    let extra = if b > 0.0 && b < 1.0 {
        ((1e-14 * (1.0 - b)).ln() / b.ln()).ceil().max(0.0) as usize
    } else {
        0
    };
    params.m + extra.max(50)
}

/// Numerical oracle: builds the explicit transition matrix of the chain
/// truncated at `truncation` (no birth out of the last state), solves the
/// global balance equations `πP = π, Σπ = 1` by LU with iterative refinement,
/// and renormalises.
pub fn truncated_solve_oracle(
    params: &ProtocolParams,
    rates: &ServiceRates,
    truncation: usize,
) -> Result<QueueDistribution> {
    check_inputs(params, rates)?;
    let m = params.m;
    if truncation <= m {
        return Err(Error::param(
            "truncation",
            format!("{truncation} must exceed M = {m}"),
        ));
    }
    let n = truncation + 1;
    if n > ORACLE_MAX_STATES {
        return Err(Error::Numerical(format!(
            "truncated chain needs {n} states, above the dense-solve limit {ORACLE_MAX_STATES}"
        )));
    }

    let mut p = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let up = if i + 1 < n {
            birth_probability(params, rates, i)
        } else {
            0.0
        };
        let down = death_probability(params, rates, i);
        if i + 1 < n {
            p[(i, i + 1)] = up;
        }
        if i > 0 {
            p[(i, i - 1)] = down;
        }
        p[(i, i)] = 1.0 - up - down;
    }

    // (Pᵀ − I) π = 0 with the first equation replaced by Σπ = 1.
    let mut a = p.transpose() - DMatrix::<f64>::identity(n, n);
    a.row_mut(0).fill(1.0);
    let mut rhs = DVector::<f64>::zeros(n);
    rhs[0] = 1.0;

    let lu = a.clone().lu();
    let mut pi = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular balance system".into()))?;

    let residual = |pi: &DVector<f64>| -> f64 {
        let flow = p.tr_mul(pi) - pi;
        flow.amax().max((pi.sum() - 1.0).abs())
    };
    let mut res = residual(&pi);
    for _ in 0..8 {
        if res <= ORACLE_RESIDUAL {
            break;
        }
        let correction = lu
            .solve(&(&rhs - &a * &pi))
            .ok_or_else(|| Error::Numerical("singular balance system".into()))?;
        pi += correction;
        res = residual(&pi);
    }
    if res > ORACLE_RESIDUAL {
        return Err(Error::Numerical(format!(
            "global balance residual {res:e} above {ORACLE_RESIDUAL:e} after refinement"
        )));
    }

    let mut values: Vec<f64> = pi.iter().copied().collect();
    for (i, v) in values.iter_mut().enumerate() {
        if *v < 0.0 {
            if *v < -1e-15 {
                return Err(Error::Numerical(format!(
                    "negative mass {v:e} at state {i}"
                )));
            }
            *v = 0.0;
        }
    }
    let total: f64 = values.iter().sum();
    values.iter_mut().for_each(|v| *v /= total);

    let (_, b) = geometric_ratios(params, rates);
    let band = values[1..=m].to_vec();
    let tail = values[m + 1..].to_vec();
    Ok(QueueDistribution {
        params: *params,
        rates: *rates,
        pi0: values[0],
        prob_band: band.iter().sum(),
        prob_above: tail.iter().sum(),
        band,
        tail: Tail::Explicit(tail),
        tail_ratio: b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn point(lambda: f64, mu1: f64, mu2: f64, m: usize) -> (ProtocolParams, ServiceRates) {
        (
            ProtocolParams { lambda, q: 0.5, m },
            ServiceRates { mu1, mu2 },
        )
    }

    fn oracle(params: &ProtocolParams, rates: &ServiceRates) -> QueueDistribution {
        truncated_solve_oracle(params, rates, oracle_truncation(params, rates)).unwrap()
    }

    #[test]
    fn service_rate_examples() {
        let fig3 = LinkSuccessProfile::new(0.8, 0.6, 0.9, 0.7).unwrap();
        let r = service_rates(&fig3, 0.9).unwrap();
        assert!((r.mu1 - 0.62).abs() < 1e-15);
        assert_eq!(r.mu2, 0.8);
        let r = service_rates(&fig3, 0.0).unwrap();
        assert_eq!((r.mu1, r.mu2), (0.8, 0.8));
        let r = service_rates(&fig3, 1.0).unwrap();
        assert_eq!(r.mu1, 0.6);
    }

    #[test]
    fn degenerate_profiles_rejected() {
        let dead = LinkSuccessProfile::new(0.0, 0.0, 0.9, 0.7).unwrap();
        assert!(matches!(
            service_rates(&dead, 0.3),
            Err(Error::Degenerate(_))
        ));
        let jammed = LinkSuccessProfile::new(0.8, 0.0, 0.9, 0.7).unwrap();
        assert!(matches!(
            service_rates(&jammed, 1.0),
            Err(Error::Degenerate(_))
        ));
        assert!(service_rates(&jammed, 0.99).is_ok());
    }

    #[test]
    fn params_domain() {
        assert!(ProtocolParams::new(1.0, 0.5, 2).is_err());
        assert!(ProtocolParams::new(-0.1, 0.5, 2).is_err());
        assert!(ProtocolParams::new(0.3, 1.1, 2).is_err());
        assert!(ProtocolParams::new(0.3, 0.5, 0).is_err());
        assert!(ProtocolParams::new(0.0, 0.0, 1).is_ok());
    }

    #[test]
    fn stability_examples() {
        let (p, r) = point(0.3, 0.62, 0.8, 2);
        assert!(is_stable(&p, &r));
        let (p, r) = point(0.8, 0.62, 0.8, 2);
        assert!(!is_stable(&p, &r));
        let (p, r) = point(0.9, 0.62, 0.8, 2);
        assert!(!is_stable(&p, &r));
        assert!(matches!(
            stationary_distribution(&p, &r),
            Err(Error::Unstable { .. })
        ));
        assert!(prob_empty(&p, &r).is_err());
        assert!(prob_band(&p, &r).is_err());
    }

    #[test]
    fn empty_system() {
        let (p, r) = point(0.0, 0.4, 0.7, 3);
        let d = stationary_distribution(&p, &r).unwrap();
        assert_eq!(d.pi0, 1.0);
        assert_eq!(d.prob_band, 0.0);
        assert_eq!(d.prob_above, 0.0);
        assert_eq!(prob_empty(&p, &r).unwrap(), 1.0);
        assert_eq!(prob_band(&p, &r).unwrap(), 0.0);
        assert_eq!(oracle(&p, &r).pi0, 1.0);
    }

    // Reference values from an independent dense solve of the 401-state
    // truncated chain (numpy.linalg.solve), λ=0.3, μ1=0.62, μ2=0.8, M=2.
    const REF_PI0: f64 = 0.522_407_764_060_600_3;
    const REF_BAND: f64 = 0.455_965_493_063_999_3;
    const REF_ABOVE: f64 = 0.021_626_742_875_400_4;

    #[test]
    fn fig3_point_matches_reference() {
        let (p, r) = point(0.3, 0.62, 0.8, 2);
        let d = stationary_distribution(&p, &r).unwrap();
        assert!((d.pi0 - REF_PI0).abs() < 1e-12);
        assert!((d.prob_band - REF_BAND).abs() < 1e-12);
        assert!((d.prob_above - REF_ABOVE).abs() < 1e-12);
        assert!((prob_empty(&p, &r).unwrap() - REF_PI0).abs() < 1e-12);
        assert!((prob_band(&p, &r).unwrap() - REF_BAND).abs() < 1e-12);
        let o = oracle(&p, &r);
        assert!((o.pi0 - REF_PI0).abs() < 1e-12);
    }

    #[test]
    fn band_matches_product_formula() {
        let (p, r) = point(0.35, 0.55, 0.9, 5);
        let d = stationary_distribution(&p, &r).unwrap();
        let (l, mu1) = (p.lambda, r.mu1);
        for i in 1..=5 {
            let expected = l.powi(i as i32) * (1.0 - mu1).powi(i as i32 - 1)
                / ((1.0 - l).powi(i as i32) * mu1.powi(i as i32))
                * d.pi0;
            assert!((d.prob(i) - expected).abs() < 1e-14);
        }
        // π(M+k) = a^M/(1−μ2) · b^k · π(0)
        let (a, b) = geometric_ratios(&p, &r);
        for k in 1..6 {
            let expected = a.powi(5) / (1.0 - r.mu2) * b.powi(k) * d.pi0;
            assert!((d.prob(5 + k as usize) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_point_uses_summation() {
        // λ = μ1 makes a = 1 and the closed forms 0/0.
        let (p, r) = point(0.62, 0.62, 0.8, 2);
        assert!(closed_form_prob_empty(&p, &r).is_none());
        let pi0 = prob_empty(&p, &r).unwrap();
        // 1 / (1 + M/(1−μ1) + λ/(μ2−λ)), cross-checked by a dense numpy solve.
        assert!((pi0 - 0.103_012_048_192_771_5).abs() < 1e-12);
        assert!((pi0 - oracle(&p, &r).pi0).abs() < 1e-10);
        let band = prob_band(&p, &r).unwrap();
        assert!((band - 0.542_168_674_698_795_1).abs() < 1e-12);
    }

    #[test]
    fn geo_geo_1_reduction() {
        let (p, r) = point(0.45, 0.7, 0.7, 3);
        let d = stationary_distribution(&p, &r).unwrap();
        assert!((d.pi0 - (1.0 - 0.45 / 0.7)).abs() < 1e-12);
        let o = oracle(&p, &r);
        let ratio: f64 = 0.45 * 0.3 / (0.55 * 0.7);
        for i in 1..40 {
            let expected = d.pi0 * 0.45 / (0.55 * 0.7) * ratio.powi(i as i32 - 1);
            assert!((o.prob(i) - expected).abs() < 1e-12, "state {i}");
        }
    }

    #[test]
    fn large_m_limit() {
        // a < 1: a^M → 0, so Pr(1≤Q≤M) → λ/μ1 and π(0) → (μ1−λ)/μ1.
        let (p, r) = point(0.3, 0.62, 0.8, 200);
        let pi0_limit = (0.62 - 0.3) / 0.62;
        assert!((prob_band(&p, &r).unwrap() - (1.0 - pi0_limit)).abs() <= 1e-9);
        assert!((prob_empty(&p, &r).unwrap() - pi0_limit).abs() <= 1e-9);
    }

    #[test]
    fn large_band_ratio_does_not_overflow() {
        let (p, r) = point(0.45, 0.15, 0.5, 600);
        let d = stationary_distribution(&p, &r).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert!(d.pi0 >= 0.0 && d.prob_band.is_finite());
        assert!(closed_form_prob_empty(&p, &r).is_none());
        assert!(prob_empty(&p, &r).unwrap().is_finite());
    }

    #[test]
    fn oracle_rejects_short_truncation() {
        let (p, r) = point(0.3, 0.62, 0.8, 4);
        assert!(truncated_solve_oracle(&p, &r, 4).is_err());
        assert!(truncated_solve_oracle(&p, &r, 5).is_ok());
    }

    #[test]
    fn truncation_rule() {
        let (p, r) = point(0.0, 0.62, 0.8, 4);
        assert_eq!(oracle_truncation(&p, &r), 54);
        // b = 0.75: ⌈ln(0.25e−14)/ln 0.75⌉ = ⌈116.87⌉ = 117
        let (p, r) = point(0.75, 0.62, 0.8, 2);
        assert_eq!(oracle_truncation(&p, &r), 119);
    }

    fn arb_point() -> impl Strategy<Value = (ProtocolParams, ServiceRates)> {
        (0.05f64..1.0, 0.0f64..1.0, 0.0f64..0.999, 1usize..12).prop_map(|(mu2, frac, lf, m)| {
            let mu1 = mu2 * (0.05 + 0.95 * frac);
            (
                ProtocolParams {
                    lambda: lf * mu2,
                    q: 0.5,
                    m,
                },
                ServiceRates { mu1, mu2 },
            )
        })
    }

    proptest! {
        #[test]
        fn normalised_and_in_detailed_balance((p, r) in arb_point()) {
            let d = stationary_distribution(&p, &r).unwrap();
            prop_assert!((d.total() - 1.0).abs() <= 1e-12);
            prop_assert!(d.pi0 > 0.0 && d.pi0 <= 1.0);
            prop_assert!(d.tail_ratio < 1.0);
            prop_assert!(d.band.iter().all(|x| *x >= 0.0));
            for i in 0..=p.m + 50 {
                let lhs = d.prob(i) * birth_probability(&p, &r, i);
                let rhs = d.prob(i + 1) * death_probability(&p, &r, i + 1);
                prop_assert!((lhs - rhs).abs() <= 1e-12, "state {}", i);
            }
        }

        #[test]
        fn closed_forms_agree_with_summation((p, r) in arb_point()) {
            let d = stationary_distribution(&p, &r).unwrap();
            if let Some(pi0) = closed_form_prob_empty(&p, &r) {
                prop_assert!((pi0 - d.pi0).abs() <= 1e-10);
                let band = closed_form_prob_band(&p, &r).unwrap();
                prop_assert!((band - d.prob_band).abs() <= 1e-10);
            }
        }
    }
}
