//! Distance-domain composition of the link budget with BER and capacity:
//! SNR at range, BER and Shannon-capacity curves, and coverage radii.

use crate::error::{Error, Result};
use crate::fading_ber::awgn_ber;
use crate::link_budget::{eirp_dbm, fspl_db, LinkScenario};
use crate::phy_sim::{simulate_ber, FadingChannel, Modulation, OfdmConfig, SimConfig};
use crate::rf_math::{from_db, to_db};

/// Thermal noise density at 290 K, dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;
pub const DEFAULT_NOISE_FIGURE_DB: f64 = 6.0;
pub const DEFAULT_NLOS_EXPONENT: f64 = 3.5;
/// Free-space reference distance for the log-distance model, m.
pub const REFERENCE_DISTANCE_M: f64 = 1.0;
const MAX_SEARCH_DISTANCE_M: f64 = 1e9;

#[derive(Debug, Clone, PartialEq)]
pub struct RadioSystem {
    pub scenario: LinkScenario,
    pub noise_bandwidth_hz: f64,
    pub noise_figure_db: f64,
    /// 2 for line of sight; larger values model NLOS beyond 1 m.
    pub path_loss_exponent: f64,
    /// Defaults to the noise bandwidth (Nyquist signalling).
    pub symbol_rate_hz: Option<f64>,
    /// Extra loss held in reserve, dB.
    pub fade_margin_db: f64,
}

impl RadioSystem {
    pub fn new(scenario: LinkScenario, noise_bandwidth_hz: f64) -> Self {
        Self {
            scenario,
            noise_bandwidth_hz,
            noise_figure_db: DEFAULT_NOISE_FIGURE_DB,
            path_loss_exponent: 2.0,
            symbol_rate_hz: None,
            fade_margin_db: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "RadioSystem";
        if !(self.noise_bandwidth_hz > 0.0) {
            return Err(Error::domain(OP, "noise bandwidth must be positive"));
        }
        if !(self.noise_figure_db >= 0.0) {
            return Err(Error::domain(OP, "noise figure must be >= 0 dB"));
        }
        if !(self.path_loss_exponent >= 2.0) {
            return Err(Error::domain(OP, "path-loss exponent must be >= 2"));
        }
        if let Some(rs) = self.symbol_rate_hz {
            if !(rs > 0.0) {
                return Err(Error::domain(OP, "symbol rate must be positive"));
            }
        }
        if !self.fade_margin_db.is_finite() {
            return Err(Error::domain(OP, "fade margin must be finite"));
        }
        self.scenario.tx.validate()?;
        self.scenario.rx.validate()
    }

    pub fn noise_floor_dbm(&self) -> f64 {
        THERMAL_NOISE_DBM_PER_HZ + 10.0 * self.noise_bandwidth_hz.log10() + self.noise_figure_db
    }

    pub fn symbol_rate(&self) -> f64 {
        self.symbol_rate_hz.unwrap_or(self.noise_bandwidth_hz)
    }

    /// Spreading loss: free space up to the reference distance, then
    /// 10·n·log10(d / d0) beyond it.
    pub fn path_loss_db(&self, distance_m: f64) -> Result<f64> {
        let carrier = &self.scenario.carrier;
        if self.path_loss_exponent == 2.0 || distance_m <= REFERENCE_DISTANCE_M {
            return fspl_db(carrier, distance_m);
        }
        Ok(fspl_db(carrier, REFERENCE_DISTANCE_M)?
            + 10.0 * self.path_loss_exponent * (distance_m / REFERENCE_DISTANCE_M).log10())
    }

    /// Received level at `distance_m`, dBm, including the environment's
    /// atmospheric, terminal and polarization losses.
    pub fn received_level_dbm(&self, distance_m: f64) -> Result<f64> {
        let s = &self.scenario;
        let env = crate::link_budget::PathEnvironment {
            distance_m,
            ..s.environment.clone()
        };
        let excess = env.excess_loss_db()?;
        Ok(
            eirp_dbm(&s.tx) - self.path_loss_db(distance_m)? + s.rx.antenna.boresight_gain_dbi
                - s.rx.cable_loss_db
                - excess,
        )
    }

    /// Eb/N0 (linear) of `scheme` at `distance_m`.
    pub fn ebn0_at_distance(&self, scheme: Modulation, distance_m: f64) -> Result<f64> {
        let snr = snr_at_distance(self, distance_m)?;
        Ok(snr * self.noise_bandwidth_hz / (scheme.bits_per_symbol() as f64 * self.symbol_rate()))
    }
}

/// Ordered (x, y) samples with axis metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveResult {
    pub name: String,
    pub x_name: String,
    pub x_unit: String,
    pub y_name: String,
    pub y_unit: String,
    pub points: Vec<(f64, f64)>,
    /// Per-point 95% half-width for Monte Carlo curves.
    pub ci95: Option<Vec<f64>>,
    /// Per-point labels, e.g. the modulation behind each coverage point.
    pub labels: Option<Vec<String>>,
    pub seed: Option<u64>,
    pub scenario_digest: Option<String>,
}

impl CurveResult {
    pub fn new(
        name: impl Into<String>,
        (x_name, x_unit): (&str, &str),
        (y_name, y_unit): (&str, &str),
        points: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::domain("CurveResult", "x values must be strictly increasing"));
        }
        if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
            return Err(Error::domain("CurveResult", "curve values must be finite"));
        }
        Ok(Self {
            name: name.into(),
            x_name: x_name.into(),
            x_unit: x_unit.into(),
            y_name: y_name.into(),
            y_unit: y_unit.into(),
            points,
            ci95: None,
            labels: None,
            seed: None,
            scenario_digest: None,
        })
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }
}

/// Linear SNR at `distance_m`: received level minus the thermal noise floor
/// and the reserved fade margin.
pub fn snr_at_distance(system: &RadioSystem, distance_m: f64) -> Result<f64> {
    system.validate()?;
    if !(distance_m > 0.0) || !distance_m.is_finite() {
        return Err(Error::domain(
            "snr_at_distance",
            format!("distance must be positive, got {distance_m}"),
        ));
    }
    let snr_db = system.received_level_dbm(distance_m)? - system.noise_floor_dbm() - system.fade_margin_db;
    Ok(from_db(snr_db))
}

/// B·log2(1 + SNR), bit/s.
pub fn shannon_capacity(bandwidth_hz: f64, snr_linear: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) || !(snr_linear >= 0.0) {
        return Err(Error::domain(
            "shannon_capacity",
            format!("bandwidth {bandwidth_hz} must be positive and SNR {snr_linear} non-negative"),
        ));
    }
    Ok(bandwidth_hz * snr_linear.ln_1p() / std::f64::consts::LN_2)
}

pub fn capacity_distance_curve(system: &RadioSystem, distances: &[f64]) -> Result<CurveResult> {
    let points = distances
        .iter()
        .map(|&d| {
            Ok((
                d,
                shannon_capacity(system.noise_bandwidth_hz, snr_at_distance(system, d)?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    CurveResult::new(
        format!("capacity_n{}", system.path_loss_exponent),
        ("distance", "m"),
        ("capacity", "bps"),
        points,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub enum BerMode {
    Theoretical,
    MonteCarlo {
        channel: FadingChannel,
        sim: SimConfig,
        ofdm: Option<OfdmConfig>,
    },
}

/// BER of `scheme` against distance. Monte Carlo point `i` runs with seed
/// `sim.seed ^ i`.
pub fn ber_distance_curve(
    system: &RadioSystem,
    scheme: Modulation,
    distances: &[f64],
    mode: &BerMode,
) -> Result<CurveResult> {
    match mode {
        BerMode::Theoretical => {
            let points = distances
                .iter()
                .map(|&d| Ok((d, awgn_ber(scheme, system.ebn0_at_distance(scheme, d)?)?)))
                .collect::<Result<Vec<_>>>()?;
            CurveResult::new(
                format!("ber_{}_theory", scheme.name()),
                ("distance", "m"),
                ("ber", "ratio"),
                points,
            )
        }
        BerMode::MonteCarlo { channel, sim, ofdm } => {
            let mut points = Vec::with_capacity(distances.len());
            let mut ci = Vec::with_capacity(distances.len());
            for (i, &d) in distances.iter().enumerate() {
                let ebn0 = system.ebn0_at_distance(scheme, d)?;
                let cfg = SimConfig {
                    seed: sim.seed ^ i as u64,
                    ebn0_db: to_db(ebn0)?,
                    ..sim.clone()
                };
                let est = simulate_ber(scheme, channel, &cfg, *ofdm)?;
                points.push((d, est.ber));
                ci.push(est.ci95_halfwidth);
            }
            let mut curve = CurveResult::new(
                format!("ber_{}_{}_sim", scheme.name(), channel.label()),
                ("distance", "m"),
                ("ber", "ratio"),
                points,
            )?;
            curve.ci95 = Some(ci);
            curve.seed = Some(sim.seed);
            Ok(curve)
        }
    }
}

/// Largest distance at which the theoretical AWGN BER of `scheme` stays at
/// or below `target_ber`.
pub fn coverage_radius(system: &RadioSystem, scheme: Modulation, target_ber: f64) -> Result<f64> {
    if !(target_ber > 0.0 && target_ber < 0.5) {
        return Err(Error::domain(
            "coverage_radius",
            format!("target BER must lie in (0, 0.5), got {target_ber}"),
        ));
    }
    let ber = |d: f64| -> Result<f64> { awgn_ber(scheme, system.ebn0_at_distance(scheme, d)?) };
    if ber(REFERENCE_DISTANCE_M)? > target_ber {
        return Err(Error::NoCoverage {
            target_ber,
            reference_m: REFERENCE_DISTANCE_M,
        });
    }
    let mut lo = REFERENCE_DISTANCE_M;
    let mut hi = 2.0 * lo;
    while ber(hi)? <= target_ber {
        lo = hi;
        hi *= 2.0;
        if hi > MAX_SEARCH_DISTANCE_M {
            return Err(Error::domain("coverage_radius", "coverage exceeds the search range"));
        }
    }
    while hi / lo - 1.0 > 1e-13 {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if ber(mid)? <= target_ber {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMeasure {
    /// Shannon capacity at the coverage radius.
    Shannon,
    /// bits_per_symbol × symbol rate.
    Nominal,
}

/// One point per scheme: x = coverage radius, y = capacity. Points are
/// sorted by radius and labelled with the scheme.
pub fn coverage_vs_capacity_curve(
    system: &RadioSystem,
    schemes: &[Modulation],
    target_ber: f64,
    measure: CapacityMeasure,
) -> Result<CurveResult> {
    if schemes.is_empty() {
        return Err(Error::domain(
            "coverage_vs_capacity_curve",
            "at least one modulation is required",
        ));
    }
    let mut rows = schemes
        .iter()
        .map(|&m| {
            let r = coverage_radius(system, m, target_ber)?;
            let y = match measure {
                CapacityMeasure::Shannon => shannon_capacity(system.noise_bandwidth_hz, snr_at_distance(system, r)?)?,
                CapacityMeasure::Nominal => m.bits_per_symbol() as f64 * system.symbol_rate(),
            };
            Ok((r, y, m))
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let suffix = match measure {
        CapacityMeasure::Shannon => "shannon",
        CapacityMeasure::Nominal => "nominal",
    };
    let mut curve = CurveResult::new(
        format!("coverage_capacity_{suffix}"),
        ("coverage", "m"),
        ("capacity", "bps"),
        rows.iter().map(|r| (r.0, r.1)).collect(),
    )?;
    curve.labels = Some(rows.iter().map(|r| r.2.name().to_string()).collect());
    Ok(curve)
}
