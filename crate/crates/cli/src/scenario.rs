//! Scenario files: a TOML document describing one link, the sweep to run
//! over it and where the artifacts go.
//!
//! Parsing applies presets and defaults and then validates every field, so
//! a [`Scenario`] value is always complete. [`Scenario::to_canonical`]
//! writes that complete form back out; parsing the canonical text yields
//! the same value.

use serde::{Deserialize, Serialize};

use mmwave_link::coverage::{RadioSystem, DEFAULT_NLOS_EXPONENT, DEFAULT_NOISE_FIGURE_DB};
use mmwave_link::link_budget::{
    climate, terrain, FadeMarginInputs, LinkEndpoint, LinkScenario, PathEnvironment, TwoRayGeometry,
    OXYGEN_ATTENUATION_60GHZ_DB_PER_KM,
};
use mmwave_link::phy_sim::sim::{DEFAULT_MAX_BITS, DEFAULT_MIN_BIT_ERRORS};
use mmwave_link::phy_sim::{CyclicPrefix, FadingChannel, Modulation, OfdmConfig, SimConfig};
use mmwave_link::rf_math::RfCarrier;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario {
    pub name: String,
    /// Named presets applied before validation, e.g. `table1-row4`.
    pub presets: Vec<String>,
    /// Subcommands this scenario is written for.
    pub commands: Vec<String>,
    pub modulations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier: Option<CarrierSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tx: Option<TxSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rx: Option<RxSection>,
    pub environment: EnvironmentSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fade_margin: Option<FadeMarginSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_ray: Option<TwoRaySection>,
    pub system: SystemSection,
    pub theory: TheorySection,
    pub channel: ChannelSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    pub sim: SimSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_ghz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TxSection {
    pub power_dbm: f64,
    pub gain_dbi: f64,
    pub cable_loss_db: f64,
}

impl Default for TxSection {
    fn default() -> Self {
        Self {
            power_dbm: 0.0,
            gain_dbi: 0.0,
            cable_loss_db: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RxSection {
    pub gain_dbi: f64,
    pub cable_loss_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvironmentSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_m: Option<f64>,
    pub attenuation_db_per_km: f64,
    pub misc_loss_tx_db: f64,
    pub misc_loss_rx_db: f64,
    pub polarization_match: f64,
}

impl Default for EnvironmentSection {
    fn default() -> Self {
        Self {
            distance_m: None,
            attenuation_db_per_km: OXYGEN_ATTENUATION_60GHZ_DB_PER_KM,
            misc_loss_tx_db: 0.0,
            misc_loss_rx_db: 0.0,
            polarization_match: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FadeMarginSection {
    pub distance_km: f64,
    pub terrain_factor: f64,
    pub climate_factor: f64,
    pub frequency_ghz: f64,
    pub availability: f64,
    /// Reserve the computed margin in SNR, coverage and sweeps.
    #[serde(default)]
    pub apply: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoRaySection {
    pub r1_m: f64,
    pub r2_m: f64,
    #[serde(default = "one")]
    pub g_t1: f64,
    #[serde(default = "one")]
    pub g_r1: f64,
    #[serde(default = "one")]
    pub g_t2: f64,
    #[serde(default = "one")]
    pub g_r2: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemSection {
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub path_loss_exponent: f64,
    pub nlos_exponent: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_rate_hz: Option<f64>,
}

impl Default for SystemSection {
    fn default() -> Self {
        Self {
            bandwidth_hz: 100e6,
            noise_figure_db: DEFAULT_NOISE_FIGURE_DB,
            path_loss_exponent: 2.0,
            nlos_exponent: DEFAULT_NLOS_EXPONENT,
            symbol_rate_hz: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TheorySection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_ber: Option<f64>,
    /// Mean SNR at which scalar BER values are reported, dB.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_snr_db: Option<f64>,
    pub rayleigh_bfsk: bool,
    pub ricean_k: Vec<f64>,
    pub diversity_branches: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sui_index: Option<u8>,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            kind: "awgn".into(),
            k_factor: None,
            sui_index: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// `distance_m` or `ebn0_db`.
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    /// Linear spacing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    /// Logarithmic spacing with this many points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// What the `sweep` subcommand evaluates: `ber`, `capacity` or `snr`.
    #[serde(default = "default_quantity")]
    pub quantity: String,
}

fn default_quantity() -> String {
    "ber".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimSection {
    pub seed: u64,
    pub min_bit_errors: u64,
    pub max_bits: u64,
    /// Add Monte Carlo curves to distance sweeps.
    pub montecarlo: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ofdm_subcarriers: Option<usize>,
    pub cyclic_prefix: String,
    pub charge_cyclic_prefix: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl Default for SimSection {
    fn default() -> Self {
        Self {
            seed: 0,
            min_bit_errors: DEFAULT_MIN_BIT_ERRORS,
            max_bits: DEFAULT_MAX_BITS,
            montecarlo: false,
            ofdm_subcarriers: None,
            cyclic_prefix: "1/4".into(),
            charge_cyclic_prefix: false,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
    pub csv: bool,
    pub svg: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: "out".into(),
            csv: true,
            svg: true,
        }
    }
}

struct Table1Row {
    modulation: &'static str,
    frequency_ghz: f64,
}

/// Modulation comparison rows; every row is point-to-point with G = 1/4.
const TABLE1: [Table1Row; 8] = [
    Table1Row {
        modulation: "bpsk",
        frequency_ghz: 57.0,
    },
    Table1Row {
        modulation: "qpsk",
        frequency_ghz: 57.0,
    },
    Table1Row {
        modulation: "qam16",
        frequency_ghz: 57.0,
    },
    Table1Row {
        modulation: "qam64",
        frequency_ghz: 57.0,
    },
    Table1Row {
        modulation: "bpsk",
        frequency_ghz: 63.0,
    },
    Table1Row {
        modulation: "qpsk",
        frequency_ghz: 63.0,
    },
    Table1Row {
        modulation: "qam16",
        frequency_ghz: 63.0,
    },
    Table1Row {
        modulation: "qam64",
        frequency_ghz: 63.0,
    },
];

pub const PRESET_NAMES: [&str; 9] = [
    "table1-row1",
    "table1-row2",
    "table1-row3",
    "table1-row4",
    "table1-row5",
    "table1-row6",
    "table1-row7",
    "table1-row8",
    "karachi",
];

fn invalid(field: &str, reason: impl Into<String>) -> CliError {
    CliError::Validation {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn check_positive(field: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, format!("must be positive, got {v}")))
    }
}

fn check_non_negative(field: &str, v: f64) -> Result<(), CliError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, format!("must be >= 0, got {v}")))
    }
}

/// Parses, applies presets and defaults, and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let mut scenario: Scenario = toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
    scenario.apply_presets()?;
    scenario.normalize();
    scenario.validate()?;
    Ok(scenario)
}

impl Scenario {
    pub fn to_canonical(&self) -> String {
        toml::to_string(self).expect("scenario values are always representable in TOML")
    }

    fn apply_presets(&mut self) -> Result<(), CliError> {
        for name in self.presets.clone() {
            if let Some(row) = name.strip_prefix("table1-row").and_then(|n| n.parse::<usize>().ok()) {
                let row = TABLE1
                    .get(row.wrapping_sub(1))
                    .ok_or_else(|| invalid("presets", format!("unknown preset `{name}`")))?;
                self.preset_frequency(&name, row.frequency_ghz * 1e9)?;
                let m = row.modulation.to_string();
                if self.modulations.is_empty() {
                    self.modulations.push(m);
                } else if !self
                    .modulations
                    .iter()
                    .any(|x| canonical_modulation(x).as_deref() == Some(&m))
                {
                    return Err(invalid("modulations", format!("preset `{name}` requires {m}")));
                }
                if self.sim.cyclic_prefix != "1/4" {
                    return Err(invalid("sim.cyclic_prefix", format!("preset `{name}` requires 1/4")));
                }
            } else if name == "karachi" {
                let preset = FadeMarginSection {
                    distance_km: 30.0,
                    terrain_factor: terrain::SMOOTH,
                    climate_factor: climate::HOT_HUMID,
                    frequency_ghz: 60.0,
                    availability: 0.99999,
                    apply: false,
                };
                match &self.fade_margin {
                    None => self.fade_margin = Some(preset),
                    Some(fm)
                        if FadeMarginSection {
                            apply: false,
                            ..fm.clone()
                        } == preset => {}
                    Some(_) => {
                        return Err(invalid("fade_margin", "conflicts with preset `karachi`"));
                    }
                }
            } else {
                return Err(invalid("presets", format!("unknown preset `{name}`")));
            }
        }
        Ok(())
    }

    fn preset_frequency(&mut self, preset: &str, hz: f64) -> Result<(), CliError> {
        match &self.carrier {
            None => {
                self.carrier = Some(CarrierSection {
                    frequency_hz: Some(hz),
                    frequency_ghz: None,
                })
            }
            Some(c) => {
                let given = c.frequency_hz.or(c.frequency_ghz.map(|g| g * 1e9));
                if given.is_some_and(|f| (f - hz).abs() > 1e-6 * hz) {
                    return Err(invalid("carrier", format!("conflicts with preset `{preset}`")));
                }
            }
        }
        Ok(())
    }

    fn normalize(&mut self) {
        if let Some(c) = &mut self.carrier {
            if c.frequency_hz.is_none() {
                c.frequency_hz = c.frequency_ghz.map(|g| g * 1e9);
            }
            c.frequency_ghz = None;
        }
        for m in &mut self.modulations {
            if let Some(c) = canonical_modulation(m) {
                *m = c;
            }
        }
        self.channel.kind = self.channel.kind.to_ascii_lowercase();
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(c) = &self.carrier {
            match (c.frequency_hz, c.frequency_ghz) {
                (Some(f), None) => check_positive("carrier.frequency_hz", f)?,
                _ => return Err(invalid("carrier", "give exactly one of frequency_hz or frequency_ghz")),
            }
        }
        for m in &self.modulations {
            if Modulation::from_name(m).is_none() {
                return Err(invalid("modulations", format!("unknown modulation `{m}`")));
            }
        }
        for c in &self.commands {
            if crate::commands::Command::from_name(c).is_none() {
                return Err(invalid("commands", format!("unknown subcommand `{c}`")));
            }
        }
        if let Some(tx) = &self.tx {
            check_non_negative("tx.cable_loss_db", tx.cable_loss_db)?;
        }
        if let Some(rx) = &self.rx {
            check_non_negative("rx.cable_loss_db", rx.cable_loss_db)?;
        }
        let env = &self.environment;
        if let Some(d) = env.distance_m {
            check_positive("environment.distance_m", d)?;
        }
        check_non_negative("environment.attenuation_db_per_km", env.attenuation_db_per_km)?;
        check_non_negative("environment.misc_loss_tx_db", env.misc_loss_tx_db)?;
        check_non_negative("environment.misc_loss_rx_db", env.misc_loss_rx_db)?;
        if !(0.0..=1.0).contains(&env.polarization_match) {
            return Err(invalid("environment.polarization_match", "must lie in [0, 1]"));
        }
        if let Some(fm) = &self.fade_margin {
            check_positive("fade_margin.distance_km", fm.distance_km)?;
            check_positive("fade_margin.terrain_factor", fm.terrain_factor)?;
            check_positive("fade_margin.climate_factor", fm.climate_factor)?;
            check_positive("fade_margin.frequency_ghz", fm.frequency_ghz)?;
            if !(fm.availability > 0.0 && fm.availability < 1.0) {
                return Err(invalid(
                    "fade_margin.availability",
                    format!("must lie strictly between 0 and 1, got {}", fm.availability),
                ));
            }
        }
        if let Some(tr) = &self.two_ray {
            tr.geometry()
                .validate()
                .map_err(|e| invalid("two_ray", e.to_string()))?;
        }
        let sys = &self.system;
        check_positive("system.bandwidth_hz", sys.bandwidth_hz)?;
        check_non_negative("system.noise_figure_db", sys.noise_figure_db)?;
        if !(sys.path_loss_exponent >= 2.0) {
            return Err(invalid("system.path_loss_exponent", "must be >= 2"));
        }
        if !(sys.nlos_exponent >= 2.0) {
            return Err(invalid("system.nlos_exponent", "must be >= 2"));
        }
        if let Some(rs) = sys.symbol_rate_hz {
            check_positive("system.symbol_rate_hz", rs)?;
        }
        let th = &self.theory;
        if let Some(t) = th.target_ber {
            if !(t > 0.0 && t < 0.5) {
                return Err(invalid("theory.target_ber", "must lie in (0, 0.5)"));
            }
        }
        for &k in &th.ricean_k {
            check_non_negative("theory.ricean_k", k)?;
        }
        if th.diversity_branches.iter().any(|&l| l == 0 || l > 32) {
            return Err(invalid("theory.diversity_branches", "branch counts must lie in 1..=32"));
        }
        self.fading_channel()?;
        if let Some(sw) = &self.sweep {
            self.sweep_values()?;
            if !matches!(sw.quantity.as_str(), "ber" | "capacity" | "snr") {
                return Err(invalid("sweep.quantity", "must be ber, capacity or snr"));
            }
        }
        let sim = &self.sim;
        if sim.min_bit_errors == 0 {
            return Err(invalid("sim.min_bit_errors", "must be >= 1"));
        }
        if sim.max_bits < 6 {
            return Err(invalid("sim.max_bits", "must cover at least one symbol"));
        }
        if sim.workers == Some(0) {
            return Err(invalid("sim.workers", "must be >= 1"));
        }
        self.ofdm()?;
        Ok(())
    }

    pub fn modulation_list(&self) -> Vec<Modulation> {
        self.modulations
            .iter()
            .filter_map(|m| Modulation::from_name(m))
            .collect()
    }

    pub fn carrier(&self) -> Result<RfCarrier, CliError> {
        let hz = self
            .carrier
            .as_ref()
            .and_then(|c| c.frequency_hz)
            .ok_or_else(|| CliError::missing("carrier.frequency_hz"))?;
        Ok(RfCarrier::new(hz)?)
    }

    pub fn transmitter(&self) -> Result<LinkEndpoint, CliError> {
        let tx = self.tx.as_ref().ok_or_else(|| CliError::missing("tx"))?;
        Ok(LinkEndpoint::transmitter(tx.power_dbm, tx.gain_dbi, tx.cable_loss_db))
    }

    pub fn receiver(&self) -> Result<LinkEndpoint, CliError> {
        let rx = self.rx.as_ref().ok_or_else(|| CliError::missing("rx"))?;
        Ok(LinkEndpoint::receiver(rx.gain_dbi, rx.cable_loss_db))
    }

    pub fn distance_m(&self) -> Result<f64, CliError> {
        self.environment
            .distance_m
            .ok_or_else(|| CliError::missing("environment.distance_m"))
    }

    pub fn path_environment(&self, distance_m: f64) -> PathEnvironment {
        let env = &self.environment;
        PathEnvironment {
            distance_m,
            atmospheric_attenuation_db_per_km: env.attenuation_db_per_km,
            misc_loss_tx_db: env.misc_loss_tx_db,
            misc_loss_rx_db: env.misc_loss_rx_db,
            polarization_match: env.polarization_match,
            allow_total_mismatch: false,
        }
    }

    pub fn fade_margin_inputs(&self) -> Result<FadeMarginInputs, CliError> {
        let fm = self
            .fade_margin
            .as_ref()
            .ok_or_else(|| CliError::missing("fade_margin"))?;
        Ok(FadeMarginInputs {
            distance_km: fm.distance_km,
            terrain_factor: fm.terrain_factor,
            climate_factor: fm.climate_factor,
            frequency_ghz: fm.frequency_ghz,
            availability: fm.availability,
        })
    }

    pub fn link_scenario(&self) -> Result<LinkScenario, CliError> {
        Ok(LinkScenario {
            carrier: self.carrier()?,
            tx: self.transmitter()?,
            rx: self.receiver()?,
            // the distance is replaced per point by distance-domain commands
            environment: self.path_environment(self.environment.distance_m.unwrap_or(1.0)),
            fade_margin: match &self.fade_margin {
                Some(_) => Some(self.fade_margin_inputs()?),
                None => None,
            },
        })
    }

    /// Radio system with the configured path-loss exponent, or `exponent`
    /// when given.
    pub fn radio_system(&self, exponent: Option<f64>) -> Result<RadioSystem, CliError> {
        let scenario = self.link_scenario()?;
        let fade_margin_db = match &self.fade_margin {
            Some(fm) if fm.apply => mmwave_link::link_budget::fade_margin_db(&self.fade_margin_inputs()?)?,
            _ => 0.0,
        };
        Ok(RadioSystem {
            scenario,
            noise_bandwidth_hz: self.system.bandwidth_hz,
            noise_figure_db: self.system.noise_figure_db,
            path_loss_exponent: exponent.unwrap_or(self.system.path_loss_exponent),
            symbol_rate_hz: self.system.symbol_rate_hz,
            fade_margin_db,
        })
    }

    pub fn fading_channel(&self) -> Result<FadingChannel, CliError> {
        let ch = &self.channel;
        match ch.kind.as_str() {
            "awgn" => Ok(FadingChannel::Awgn),
            "rayleigh" => Ok(FadingChannel::Rayleigh),
            "ricean" | "rician" => {
                let k = ch.k_factor.ok_or_else(|| CliError::missing("channel.k_factor"))?;
                FadingChannel::ricean(k).map_err(|e| invalid("channel.k_factor", e.to_string()))
            }
            "sui" => {
                let i = ch.sui_index.ok_or_else(|| CliError::missing("channel.sui_index"))?;
                FadingChannel::sui(i).map_err(|e| invalid("channel.sui_index", e.to_string()))
            }
            other => Err(invalid("channel.kind", format!("unknown channel `{other}`"))),
        }
    }

    pub fn ofdm(&self) -> Result<Option<OfdmConfig>, CliError> {
        let cp = CyclicPrefix::parse(&self.sim.cyclic_prefix)
            .ok_or_else(|| invalid("sim.cyclic_prefix", "must be 1/4, 1/8, 1/16 or 1/32"))?;
        self.sim
            .ofdm_subcarriers
            .map(|n| OfdmConfig::new(n, cp).map_err(|e| invalid("sim.ofdm_subcarriers", e.to_string())))
            .transpose()
    }

    pub fn sim_config(&self, workers: Option<usize>) -> SimConfig {
        SimConfig {
            seed: self.sim.seed,
            min_bit_errors: self.sim.min_bit_errors,
            max_bits: self.sim.max_bits,
            ebn0_db: 0.0,
            charge_cyclic_prefix: self.sim.charge_cyclic_prefix,
            workers: workers.or(self.sim.workers),
        }
    }

    /// Grid of the swept variable, strictly increasing.
    pub fn sweep_values(&self) -> Result<Vec<f64>, CliError> {
        let sw = self.sweep.as_ref().ok_or_else(|| CliError::missing("sweep"))?;
        if !matches!(sw.variable.as_str(), "distance_m" | "ebn0_db") {
            return Err(invalid("sweep.variable", "must be distance_m or ebn0_db"));
        }
        if !(sw.start.is_finite() && sw.stop.is_finite() && sw.start < sw.stop) {
            return Err(invalid("sweep", "need finite start < stop"));
        }
        if sw.variable == "distance_m" {
            check_positive("sweep.start", sw.start)?;
        }
        let values = match (sw.step, sw.points) {
            (Some(step), None) => {
                check_positive("sweep.step", step)?;
                let n = ((sw.stop - sw.start) / step + 1e-9).floor() as usize;
                if n > 100_000 {
                    return Err(invalid("sweep.step", "more than 100000 points"));
                }
                (0..=n).map(|i| sw.start + i as f64 * step).collect()
            }
            (None, Some(points)) => {
                if !(2..=100_000).contains(&points) {
                    return Err(invalid("sweep.points", "must lie in 2..=100000"));
                }
                if sw.start <= 0.0 {
                    return Err(invalid("sweep.start", "log spacing needs a positive start"));
                }
                let ratio = (sw.stop / sw.start).ln() / (points - 1) as f64;
                (0..points).map(|i| sw.start * (ratio * i as f64).exp()).collect()
            }
            _ => return Err(invalid("sweep", "give exactly one of step or points")),
        };
        Ok(values)
    }
}

impl TwoRaySection {
    pub fn geometry(&self) -> TwoRayGeometry {
        TwoRayGeometry {
            r1_m: self.r1_m,
            r2_m: self.r2_m,
            g_t1: self.g_t1,
            g_r1: self.g_r1,
            g_t2: self.g_t2,
            g_r2: self.g_r2,
        }
    }
}

fn canonical_modulation(name: &str) -> Option<String> {
    Modulation::from_name(name).map(|m| m.name().to_string())
}
