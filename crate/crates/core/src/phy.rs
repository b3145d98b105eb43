//! Multipacket-reception physical layer.
//!
//! A packet from transmitter `i` is decoded at receiver `j` iff
//! `A(i,j) g(i,j) / (η_j + Σ_k A(k,j) g(k,j)) ≥ γ_j`, where the fading powers
//! `A(·,j)` are independent exponentials with means `v(·,j)`. Under that law
//! the success probability has the closed form implemented by
//! [`PhyScenario::success_probability`]; [`PhyScenario::mc_success_estimate`]
//! samples the fading directly and serves as an independent check.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Deserialize;

use crate::error::{check_probability, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transmitter {
    /// Primary source `P`.
    Primary,
    /// Secondary source `S`.
    Secondary,
}

impl Transmitter {
    pub const ALL: [Transmitter; 2] = [Transmitter::Primary, Transmitter::Secondary];
}

impl fmt::Display for Transmitter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transmitter::Primary => "P",
            Transmitter::Secondary => "S",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    /// Primary destination `D_P`.
    PrimaryDest,
    /// Secondary destination `D_S`.
    SecondaryDest,
}

impl fmt::Display for Receiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Receiver::PrimaryDest => "D_P",
            Receiver::SecondaryDest => "D_S",
        })
    }
}

/// One value per transmitter–receiver pair.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerLink {
    #[serde(rename = "P_DP")]
    pub p_dp: f64,
    #[serde(rename = "P_DS")]
    pub p_ds: f64,
    #[serde(rename = "S_DP")]
    pub s_dp: f64,
    #[serde(rename = "S_DS")]
    pub s_ds: f64,
}

impl PerLink {
    pub fn uniform(value: f64) -> Self {
        PerLink {
            p_dp: value,
            p_ds: value,
            s_dp: value,
            s_ds: value,
        }
    }

    pub fn get(&self, tx: Transmitter, rx: Receiver) -> f64 {
        match (tx, rx) {
            (Transmitter::Primary, Receiver::PrimaryDest) => self.p_dp,
            (Transmitter::Primary, Receiver::SecondaryDest) => self.p_ds,
            (Transmitter::Secondary, Receiver::PrimaryDest) => self.s_dp,
            (Transmitter::Secondary, Receiver::SecondaryDest) => self.s_ds,
        }
    }

    pub fn set(&mut self, tx: Transmitter, rx: Receiver, value: f64) {
        let slot = match (tx, rx) {
            (Transmitter::Primary, Receiver::PrimaryDest) => &mut self.p_dp,
            (Transmitter::Primary, Receiver::SecondaryDest) => &mut self.p_ds,
            (Transmitter::Secondary, Receiver::PrimaryDest) => &mut self.s_dp,
            (Transmitter::Secondary, Receiver::SecondaryDest) => &mut self.s_ds,
        };
        *slot = value;
    }

    fn entries(&self) -> [(&'static str, f64); 4] {
        [
            ("P_DP", self.p_dp),
            ("P_DS", self.p_ds),
            ("S_DP", self.s_dp),
            ("S_DS", self.s_ds),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerReceiver {
    #[serde(rename = "D_P")]
    pub d_p: f64,
    #[serde(rename = "D_S")]
    pub d_s: f64,
}

impl PerReceiver {
    pub fn uniform(value: f64) -> Self {
        PerReceiver {
            d_p: value,
            d_s: value,
        }
    }

    pub fn get(&self, rx: Receiver) -> f64 {
        match rx {
            Receiver::PrimaryDest => self.d_p,
            Receiver::SecondaryDest => self.d_s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerTransmitter {
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "S")]
    pub s: f64,
}

impl PerTransmitter {
    pub fn get(&self, tx: Transmitter) -> f64 {
        match tx {
            Transmitter::Primary => self.p,
            Transmitter::Secondary => self.s,
        }
    }
}

/// How the received power factor `g(i,j)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gains {
    /// `g(i,j) = P_tx(i) · r(i,j)^(−α)`.
    Geometric {
        tx_power: PerTransmitter,
        distance: PerLink,
        pathloss_exponent: f64,
    },
    /// `g(i,j)` given directly.
    Direct(PerLink),
}

/// Geometry, powers, fading, noise and thresholds of the two-pair network.
/// All quantities are linear (not dB).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhyScenario {
    pub gains: Gains,
    /// Mean `v(i,j)` of the exponential fading power on each link.
    pub fading_mean: PerLink,
    /// Receiver noise power `η_j`.
    pub noise: PerReceiver,
    /// SINR decoding threshold `γ_j`.
    pub threshold: PerReceiver,
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::param(
            name,
            format!("{value} must be finite and > 0"),
        ))
    }
}

impl PhyScenario {
    pub fn validate(&self) -> Result<()> {
        match &self.gains {
            Gains::Geometric {
                tx_power,
                distance,
                pathloss_exponent,
            } => {
                check_positive("tx_power.P", tx_power.p)?;
                check_positive("tx_power.S", tx_power.s)?;
                for (key, d) in distance.entries() {
                    check_positive(&format!("distance.{key}"), d)?;
                }
                if !(*pathloss_exponent > 2.0 && pathloss_exponent.is_finite()) {
                    return Err(Error::param(
                        "pathloss_exponent",
                        format!("{pathloss_exponent} must be > 2"),
                    ));
                }
            }
            Gains::Direct(g) => {
                for (key, value) in g.entries() {
                    check_positive(&format!("gain.{key}"), value)?;
                }
            }
        }
        for (key, v) in self.fading_mean.entries() {
            check_positive(&format!("fading_mean.{key}"), v)?;
        }
        for (key, rx) in [
            ("D_P", Receiver::PrimaryDest),
            ("D_S", Receiver::SecondaryDest),
        ] {
            let eta = self.noise.get(rx);
            if !(eta >= 0.0 && eta.is_finite()) {
                return Err(Error::param(
                    format!("noise.{key}"),
                    format!("{eta} must be >= 0"),
                ));
            }
            check_positive(&format!("threshold.{key}"), self.threshold.get(rx))?;
        }
        Ok(())
    }

    /// Received power factor `g(i,j)`.
    pub fn received_power_factor(&self, tx: Transmitter, rx: Receiver) -> f64 {
        match &self.gains {
            Gains::Geometric {
                tx_power,
                distance,
                pathloss_exponent,
            } => tx_power.get(tx) * distance.get(tx, rx).powf(-pathloss_exponent),
            Gains::Direct(g) => g.get(tx, rx),
        }
    }

    /// Mean received power `v(i,j) g(i,j)`.
    fn mean_rx_power(&self, tx: Transmitter, rx: Receiver) -> f64 {
        self.fading_mean.get(tx, rx) * self.received_power_factor(tx, rx)
    }

    /// Closed-form probability that `tx` is decoded at `rx` while every node in
    /// `active` transmits.
    pub fn success_probability(
        &self,
        tx: Transmitter,
        active: &[Transmitter],
        rx: Receiver,
    ) -> Result<f64> {
        if !active.contains(&tx) {
            return Err(Error::param(
                "active",
                format!("transmitter {tx} is not in the active set"),
            ));
        }
        let gamma = self.threshold.get(rx);
        let signal = self.mean_rx_power(tx, rx);
        let mut p = (-gamma * self.noise.get(rx) / signal).exp();
        for k in interferers(tx, active) {
            p /= 1.0 + gamma * self.mean_rx_power(k, rx) / signal;
        }
        Ok(p)
    }

    /// Solo and joint success probabilities at both destinations.
    pub fn derive_link_profile(&self) -> Result<LinkSuccessProfile> {
        use Receiver::*;
        use Transmitter::*;
        self.validate()?;
        let both = [Primary, Secondary];
        LinkSuccessProfile::new(
            self.success_probability(Primary, &[Primary], PrimaryDest)?,
            self.success_probability(Primary, &both, PrimaryDest)?,
            self.success_probability(Secondary, &[Secondary], SecondaryDest)?,
            self.success_probability(Secondary, &both, SecondaryDest)?,
        )
    }

    /// Monte Carlo estimate of [`success_probability`](Self::success_probability)
    /// from `samples` independent fading draws.
    pub fn mc_success_estimate(
        &self,
        tx: Transmitter,
        active: &[Transmitter],
        rx: Receiver,
        samples: u64,
        seed: u64,
    ) -> Result<McEstimate> {
        if samples == 0 {
            return Err(Error::param("samples", "must be at least 1"));
        }
        if !active.contains(&tx) {
            return Err(Error::param(
                "active",
                format!("transmitter {tx} is not in the active set"),
            ));
        }
        let gamma = self.threshold.get(rx);
        let noise = self.noise.get(rx);
        let signal = self.mean_rx_power(tx, rx);
        let interference: Vec<f64> = interferers(tx, active)
            .map(|k| self.mean_rx_power(k, rx))
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut successes = 0u64;
        for _ in 0..samples {
            // Exp1 scaled by the mean gives an exponential with that mean.
            let a: f64 = Exp1.sample(&mut rng);
            let received = a * signal;
            let mut denom = noise;
            for &mean in &interference {
                let ak: f64 = Exp1.sample(&mut rng);
                denom += ak * mean;
            }
            if received >= gamma * denom {
                successes += 1;
            }
        }
        let p = successes as f64 / samples as f64;
        Ok(McEstimate {
            probability: p,
            std_error: (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
        })
    }

    /// Loads a scenario from a TOML file.
    ///
    /// ```toml
    /// pathloss_exponent = 4.0
    /// [tx_power]
    /// P = 1.0
    /// S = 1.0
    /// [distance]          # or [gain] with the same keys to give g(i,j) directly
    /// P_DP = 1.0
    /// P_DS = 2.0
    /// S_DP = 2.0
    /// S_DS = 1.0
    /// [fading_mean]
    /// P_DP = 1.0
    /// P_DS = 1.0
    /// S_DP = 1.0
    /// S_DS = 1.0
    /// [noise]
    /// D_P = 0.01
    /// D_S = 0.01
    /// [threshold]
    /// D_P = 1.0
    /// D_S = 1.0
    /// ```
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Parse {
            path: "<scenario>".into(),
            message: e.to_string(),
        })?;
        file.try_into()
    }
}

fn interferers(tx: Transmitter, active: &[Transmitter]) -> impl Iterator<Item = Transmitter> + '_ {
    Transmitter::ALL
        .into_iter()
        .filter(move |k| *k != tx && active.contains(k))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ScenarioFile {
    pathloss_exponent: Option<f64>,
    tx_power: Option<PerTransmitter>,
    distance: Option<PerLink>,
    gain: Option<PerLink>,
    fading_mean: PerLink,
    noise: PerReceiver,
    threshold: PerReceiver,
}

impl TryFrom<ScenarioFile> for PhyScenario {
    type Error = Error;

    fn try_from(file: ScenarioFile) -> Result<Self> {
        let gains = match (
            file.gain,
            file.distance,
            file.tx_power,
            file.pathloss_exponent,
        ) {
            (Some(g), None, None, None) => Gains::Direct(g),
            (None, Some(distance), Some(tx_power), Some(pathloss_exponent)) => Gains::Geometric {
                tx_power,
                distance,
                pathloss_exponent,
            },
            (Some(_), ..) => {
                return Err(Error::param(
                    "gain",
                    "[gain] excludes [distance], [tx_power] and pathloss_exponent",
                ))
            }
            (None, d, p, a) => {
                let missing = [
                    ("distance", d.is_none()),
                    ("tx_power", p.is_none()),
                    ("pathloss_exponent", a.is_none()),
                ]
                .into_iter()
                .find(|(_, m)| *m)
                .map(|(k, _)| k)
                .unwrap_or("gain");
                return Err(Error::param(missing, "missing (or give [gain] directly)"));
            }
        };
        let scenario = PhyScenario {
            gains,
            fading_mean: file.fading_mean,
            noise: file.noise,
            threshold: file.threshold,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub probability: f64,
    /// Binomial standard error `sqrt(p̂(1−p̂)/n)`.
    pub std_error: f64,
    pub samples: u64,
}

/// The four link-success probabilities that summarise the channel for the
/// access protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSuccessProfile {
    /// `p_{1/1}`: primary decoded at `D_P`, primary alone.
    pub p11: f64,
    /// `p_{1/1,2}`: primary decoded at `D_P` while the secondary also transmits.
    pub p112: f64,
    /// `p_{2/2}`: secondary decoded at `D_S`, secondary alone.
    pub p22: f64,
    /// `p_{2/1,2}`: secondary decoded at `D_S` while the primary also transmits.
    pub p212: f64,
}

impl LinkSuccessProfile {
    pub fn new(p11: f64, p112: f64, p22: f64, p212: f64) -> Result<Self> {
        let profile = LinkSuccessProfile {
            p11,
            p112,
            p22,
            p212,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p11", self.p11)?;
        check_probability("p112", self.p112)?;
        check_probability("p22", self.p22)?;
        check_probability("p212", self.p212)?;
        if self.p112 > self.p11 {
            return Err(Error::param(
                "p112",
                format!(
                    "{} exceeds p11 = {}; interference cannot help",
                    self.p112, self.p11
                ),
            ));
        }
        if self.p212 > self.p22 {
            return Err(Error::param(
                "p212",
                format!(
                    "{} exceeds p22 = {}; interference cannot help",
                    self.p212, self.p22
                ),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for LinkSuccessProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.p11, self.p112, self.p22, self.p212)
    }
}

/// Parses `p11,p112,p22,p212`.
impl FromStr for LinkSuccessProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::param("profile", format!("`{v}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match values[..] {
            [p11, p112, p22, p212] => LinkSuccessProfile::new(p11, p112, p22, p212),
            _ => Err(Error::param(
                "profile",
                format!("expected 4 comma-separated values, got {}", values.len()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Receiver::*;
    use Transmitter::*;

    fn direct(g: PerLink, v: PerLink, eta: f64, gamma: f64) -> PhyScenario {
        PhyScenario {
            gains: Gains::Direct(g),
            fading_mean: v,
            noise: PerReceiver::uniform(eta),
            threshold: PerReceiver::uniform(gamma),
        }
    }

    fn geometric(power: f64, dist: f64, alpha: f64) -> PhyScenario {
        PhyScenario {
            gains: Gains::Geometric {
                tx_power: PerTransmitter { p: power, s: power },
                distance: PerLink::uniform(dist),
                pathloss_exponent: alpha,
            },
            fading_mean: PerLink::uniform(1.0),
            noise: PerReceiver::uniform(0.0),
            threshold: PerReceiver::uniform(1.0),
        }
    }

    #[test]
    fn power_factor_examples() {
        assert_eq!(
            geometric(1.0, 1.0, 4.0).received_power_factor(Primary, PrimaryDest),
            1.0
        );
        let g = geometric(1.0, 10.0, 4.0).received_power_factor(Primary, PrimaryDest);
        assert!((g - 1e-4).abs() < 1e-18);
        let g = geometric(2.0, 2.0, 3.0).received_power_factor(Secondary, PrimaryDest);
        assert!((g - 0.25).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let s = direct(PerLink::uniform(1.0), PerLink::uniform(1.0), 0.0, 1.0);
        assert_eq!(
            s.success_probability(Primary, &[Primary], PrimaryDest)
                .unwrap(),
            1.0
        );
        let p = s
            .success_probability(Primary, &[Primary, Secondary], PrimaryDest)
            .unwrap();
        assert!((p - 0.5).abs() < 1e-12);

        // γη / (v g) = ln 2
        let s = direct(
            PerLink::uniform(1.0),
            PerLink::uniform(1.0),
            std::f64::consts::LN_2,
            1.0,
        );
        let p = s
            .success_probability(Secondary, &[Secondary], SecondaryDest)
            .unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn transmitter_must_be_active() {
        let s = direct(PerLink::uniform(1.0), PerLink::uniform(1.0), 0.0, 1.0);
        assert!(matches!(
            s.success_probability(Primary, &[Secondary], PrimaryDest),
            Err(Error::Parameter { .. })
        ));
        assert!(s
            .mc_success_estimate(Primary, &[Secondary], PrimaryDest, 10, 1)
            .is_err());
    }

    #[test]
    fn profile_from_scenario() {
        let s = direct(PerLink::uniform(1.0), PerLink::uniform(1.0), 0.0, 1.0);
        let p = s.derive_link_profile().unwrap();
        assert_eq!((p.p11, p.p22), (1.0, 1.0));
        assert!((p.p112 - 0.5 * p.p11).abs() < 1e-12);
        assert!((p.p212 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mc_noise_free_solo_is_certain() {
        let s = direct(PerLink::uniform(1.0), PerLink::uniform(1.0), 0.0, 3.0);
        for n in [1, 7, 1000] {
            let est = s
                .mc_success_estimate(Primary, &[Primary], PrimaryDest, n, 9)
                .unwrap();
            assert_eq!(est.probability, 1.0);
            assert_eq!(est.std_error, 0.0);
        }
    }

    #[test]
    fn mc_rejects_zero_samples() {
        let s = direct(PerLink::uniform(1.0), PerLink::uniform(1.0), 0.0, 1.0);
        assert!(s
            .mc_success_estimate(Primary, &[Primary], PrimaryDest, 0, 1)
            .is_err());
    }

    #[test]
    fn mc_is_deterministic() {
        let s = direct(PerLink::uniform(1.0), PerLink::uniform(2.0), 0.3, 1.5);
        let both = [Primary, Secondary];
        let a = s
            .mc_success_estimate(Secondary, &both, SecondaryDest, 5000, 77)
            .unwrap();
        let b = s
            .mc_success_estimate(Secondary, &both, SecondaryDest, 5000, 77)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_scenarios_are_named() {
        let mut s = geometric(1.0, 1.0, 2.0);
        let err = s.validate().unwrap_err().to_string();
        assert!(err.contains("pathloss_exponent"), "{err}");
        s = geometric(1.0, 1.0, 3.0);
        s.noise.d_s = -1.0;
        assert!(s.validate().unwrap_err().to_string().contains("noise.D_S"));
        s.noise.d_s = 0.0;
        s.threshold.d_p = 0.0;
        assert!(s
            .validate()
            .unwrap_err()
            .to_string()
            .contains("threshold.D_P"));
    }

    #[test]
    fn profile_parsing_and_invariants() {
        let p: LinkSuccessProfile = "0.8, 0.6,0.9,0.7".parse().unwrap();
        assert_eq!(p, LinkSuccessProfile::new(0.8, 0.6, 0.9, 0.7).unwrap());
        assert!("0.8,0.9,0.9,0.7".parse::<LinkSuccessProfile>().is_err());
        assert!("0.8,0.6,0.9".parse::<LinkSuccessProfile>().is_err());
        assert!("0.8,0.6,1.2,0.7".parse::<LinkSuccessProfile>().is_err());
    }

    #[test]
    fn scenario_toml() {
        let text = r#"
            pathloss_exponent = 3.0
            [tx_power]
            P = 2.0
            S = 1.0
            [distance]
            P_DP = 2.0
            P_DS = 3.0
            S_DP = 3.0
            S_DS = 1.5
            [fading_mean]
            P_DP = 1.0
            P_DS = 1.0
            S_DP = 1.0
            S_DS = 1.0
            [noise]
            D_P = 0.01
            D_S = 0.02
            [threshold]
            D_P = 1.0
            D_S = 2.0
        "#;
        let s = PhyScenario::from_toml_str(text).unwrap();
        assert!((s.received_power_factor(Primary, PrimaryDest) - 0.25).abs() < 1e-15);
        assert_eq!(s.threshold.get(SecondaryDest), 2.0);

        let bad = text.replace("pathloss_exponent = 3.0", "");
        let err = PhyScenario::from_toml_str(&bad).unwrap_err().to_string();
        assert!(err.contains("pathloss_exponent"), "{err}");

        let typo = text.replace("S_DS = 1.5", "S_DX = 1.5");
        assert!(matches!(
            PhyScenario::from_toml_str(&typo),
            Err(Error::Parse { .. })
        ));
    }

    fn arb_scenario() -> impl Strategy<Value = PhyScenario> {
        (
            prop::array::uniform4(0.01f64..10.0),
            prop::array::uniform4(0.1f64..5.0),
            0.0f64..2.0,
            0.05f64..5.0,
        )
            .prop_map(|(g, v, eta, gamma)| {
                let link = |a: [f64; 4]| PerLink {
                    p_dp: a[0],
                    p_ds: a[1],
                    s_dp: a[2],
                    s_ds: a[3],
                };
                direct(link(g), link(v), eta, gamma)
            })
    }

    proptest! {
        #[test]
        fn interference_never_helps(s in arb_scenario()) {
            for (tx, rx) in [(Primary, PrimaryDest), (Secondary, SecondaryDest), (Primary, SecondaryDest)] {
                let solo = s.success_probability(tx, &[tx], rx).unwrap();
                let joint = s.success_probability(tx, &[Primary, Secondary], rx).unwrap();
                prop_assert!(joint <= solo);
                prop_assert!((0.0..=1.0).contains(&joint) && (0.0..=1.0).contains(&solo));
            }
            let p = s.derive_link_profile().unwrap();
            prop_assert!(p.p112 <= p.p11 && p.p212 <= p.p22);
        }

        #[test]
        fn monotone_in_threshold_noise_and_gains(s in arb_scenario(), f in 1.0f64..4.0) {
            let both = [Primary, Secondary];
            let base = s.success_probability(Primary, &both, PrimaryDest).unwrap();

            let mut t = s;
            t.threshold.d_p *= f;
            prop_assert!(t.success_probability(Primary, &both, PrimaryDest).unwrap() <= base);

            let mut t = s;
            t.noise.d_p = t.noise.d_p * f + 0.01;
            prop_assert!(t.success_probability(Primary, &both, PrimaryDest).unwrap() <= base);

            let Gains::Direct(g) = s.gains else { unreachable!() };
            let mut louder = g;
            louder.set(Secondary, PrimaryDest, g.s_dp * f);
            let t = PhyScenario { gains: Gains::Direct(louder), ..s };
            prop_assert!(t.success_probability(Primary, &both, PrimaryDest).unwrap() <= base);

            let mut stronger = g;
            stronger.set(Primary, PrimaryDest, g.p_dp * f);
            let t = PhyScenario { gains: Gains::Direct(stronger), ..s };
            prop_assert!(t.success_probability(Primary, &both, PrimaryDest).unwrap() >= base);

            let mut v = s.fading_mean;
            v.set(Primary, PrimaryDest, v.p_dp * f);
            let t = PhyScenario { fading_mean: v, ..s };
            prop_assert!(t.success_probability(Primary, &both, PrimaryDest).unwrap() >= base);
        }
    }
}
